//! Provenance headers and newline-delimited JSON helpers shared by every
//! output file.

use std::io::{BufRead, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TOOL: &str = "simprof";

/// Identifies the run that produced a file. Carries no timestamp so that
/// reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactHeader {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
}

#[derive(Serialize, Deserialize)]
struct HeaderLine {
    header: ArtifactHeader,
}

impl ArtifactHeader {
    pub fn new(config_hash: impl Into<String>, seed: u64) -> Self {
        ArtifactHeader {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash: config_hash.into(),
            seed,
        }
    }

    /// One-line text form used in CSV, markdown and SVG comments.
    pub fn comment(&self) -> String {
        format!(
            "{} {} config={} seed={}",
            self.tool, self.version, self.config_hash, self.seed
        )
    }

    pub fn parse_comment(text: &str) -> Option<Self> {
        let mut parts = text.split_whitespace();
        let tool = parts.next()?.to_string();
        let version = parts.next()?.to_string();
        let config_hash = parts.next()?.strip_prefix("config=")?.to_string();
        let seed = parts.next()?.strip_prefix("seed=")?.parse().ok()?;
        Some(ArtifactHeader {
            tool,
            version,
            config_hash,
            seed,
        })
    }
}

/// Writes an optional header line followed by one JSON record per line.
pub fn write_jsonl<T: Serialize>(
    mut w: impl Write,
    header: Option<&ArtifactHeader>,
    records: &[T],
) -> Result<()> {
    if let Some(header) = header {
        write_jsonl_header(&mut w, header)?;
    }
    for r in records {
        append_jsonl(&mut w, r)?;
    }
    Ok(())
}

pub fn write_jsonl_header(mut w: impl Write, header: &ArtifactHeader) -> Result<()> {
    serde_json::to_writer(
        &mut w,
        &HeaderLine {
            header: header.clone(),
        },
    )?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn append_jsonl<T: Serialize>(mut w: impl Write, record: &T) -> Result<()> {
    serde_json::to_writer(&mut w, record)?;
    w.write_all(b"\n")?;
    Ok(())
}

/// Reads records, returning the header line if the first line is one.
pub fn read_jsonl<T: DeserializeOwned>(
    r: impl BufRead,
) -> Result<(Option<ArtifactHeader>, Vec<T>)> {
    let mut header = None;
    let mut out = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if n == 0 {
            if let Ok(h) = serde_json::from_str::<HeaderLine>(&line) {
                header = Some(h.header);
                continue;
            }
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::Format {
            line: n + 1,
            message: e.to_string(),
        })?;
        out.push(record);
    }
    Ok((header, out))
}

/// Inserts an XML comment after the XML declaration of an SVG document.
pub fn svg_with_comment(svg: &str, comment: &str) -> String {
    let safe = comment.replace("--", "- -");
    match svg.find("?>") {
        Some(i) => format!("{}\n<!-- {safe} -->{}", &svg[..i + 2], &svg[i + 2..]),
        None => format!("<!-- {safe} -->\n{svg}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trips() {
        let h = ArtifactHeader::new("abc123", 7);
        assert_eq!(ArtifactHeader::parse_comment(&h.comment()), Some(h.clone()));
        let mut buf = Vec::new();
        write_jsonl(&mut buf, Some(&h), &[1u32, 2, 3]).unwrap();
        let (back, values): (_, Vec<u32>) = read_jsonl(&buf[..]).unwrap();
        assert_eq!(back, Some(h));
        assert_eq!(values, vec![1, 2, 3]);
    }

    #[test]
    fn svg_comment_follows_declaration() {
        let svg = "<?xml version=\"1.0\"?><svg/>";
        let out = svg_with_comment(svg, "x -- y");
        assert!(out.starts_with("<?xml version=\"1.0\"?>\n<!-- x - - y -->"));
    }
}
