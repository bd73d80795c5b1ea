//! Newline-delimited corpus records.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::RawText;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Article {
    pub id: String,
    #[serde(default)]
    pub title: String,
    pub text: String,
}

impl Article {
    pub fn raw(&self) -> RawText {
        RawText::new(self.id.clone(), self.text.clone())
    }
}

/// Reads one JSON article per line. Blank lines are skipped.
pub fn read_articles(reader: impl BufRead) -> Result<Vec<Article>> {
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let article: Article = serde_json::from_str(&line).map_err(|e| Error::Format {
            line: n + 1,
            message: e.to_string(),
        })?;
        if article.id.is_empty() {
            return Err(Error::Format {
                line: n + 1,
                message: "empty article id".into(),
            });
        }
        out.push(article);
    }
    Ok(out)
}

pub fn write_articles(mut writer: impl Write, articles: &[Article]) -> Result<()> {
    for article in articles {
        serde_json::to_writer(&mut writer, article)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let articles = vec![
            Article {
                id: "a".into(),
                title: "A".into(),
                text: "Der Hund bellt.".into(),
            },
            Article {
                id: "b".into(),
                title: String::new(),
                text: "Zwei\nZeilen.".into(),
            },
        ];
        let mut buf = Vec::new();
        write_articles(&mut buf, &articles).unwrap();
        assert_eq!(read_articles(&buf[..]).unwrap(), articles);
    }

    #[test]
    fn reports_line_of_bad_record() {
        let input = "{\"id\":\"a\",\"text\":\"x\"}\n\nnot json\n";
        match read_articles(input.as_bytes()) {
            Err(Error::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
