//! Simplification generation across the configuration matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Seek, SeekFrom};
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artifact::ArtifactHeader;
use crate::error::{Error, Result};
use crate::hash::sha256_hex;
use crate::label::{ConfigurationLabel, ModelSize};
use crate::limit::Limiter;

pub mod mock;
mod template;

pub use template::{
    builtin_examples, load_examples, parse_examples, render_prompt, FewShotExample, PromptTemplate,
    TemplateSet, EXAMPLES_SLOT, EXCERPT_SLOT,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodingParams {
    pub temperature: f64,
    pub max_tokens: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for DecodingParams {
    fn default() -> Self {
        DecodingParams {
            temperature: 0.0,
            max_tokens: 1024,
            seed: Some(0),
        }
    }
}

/// One generation call. Remote providers only look at `prompt`; the rest
/// is context for logging and in-process models.
#[derive(Debug, Clone)]
pub struct GenerationRequest<'a> {
    pub pair_id: &'a str,
    pub excerpt: &'a str,
    pub label: ConfigurationLabel,
    pub prompt: &'a str,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationOutput {
    pub text: String,
    /// Raw request/response details as returned by the adapter.
    #[serde(default)]
    pub metadata: serde_json::Value,
}

pub trait GenerationProvider: Send + Sync {
    fn model_id(&self) -> &str;

    fn decoding(&self) -> DecodingParams {
        DecodingParams::default()
    }

    fn max_concurrency(&self) -> usize {
        1
    }

    fn generate(&self, request: &GenerationRequest) -> Result<GenerationOutput>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplificationRecord {
    pub pair_id: String,
    pub excerpt_id: String,
    pub label: ConfigurationLabel,
    pub prompt_hash: String,
    pub source_text: String,
    pub output_text: String,
    pub model_id: String,
    pub decoding: DecodingParams,
    #[serde(default)]
    pub provider_metadata: serde_json::Value,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub flags: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SimplificationRecord {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

pub fn pair_id(excerpt_id: &str, label: &ConfigurationLabel) -> String {
    format!("{excerpt_id}|{label}")
}

/// A source excerpt to simplify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceExcerpt {
    pub excerpt_id: String,
    pub text: String,
}

/// One model per size.
pub type ProviderMap = BTreeMap<ModelSize, Arc<dyn GenerationProvider>>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationSummary {
    pub written: usize,
    pub skipped: usize,
    pub failed: usize,
}

/// Generates one record per (excerpt, label) whose pair id is not in
/// `done`, passing each to `sink` in canonical order (excerpt order, then
/// label order). Provider errors become records with `error` set.
pub fn generate_matrix(
    excerpts: &[SourceExcerpt],
    labels: &[ConfigurationLabel],
    templates: &TemplateSet,
    providers: &ProviderMap,
    done: &BTreeSet<String>,
    mut sink: impl FnMut(SimplificationRecord) -> Result<()>,
) -> Result<GenerationSummary> {
    let unique: BTreeSet<_> = labels.iter().collect();
    if unique.len() != labels.len() {
        return Err(Error::ConfigInvalid("duplicate labels in matrix".into()));
    }
    let ids: BTreeSet<_> = excerpts.iter().map(|e| &e.excerpt_id).collect();
    if ids.len() != excerpts.len() {
        return Err(Error::ConfigInvalid("duplicate excerpt ids".into()));
    }
    let mut rendered = BTreeMap::new();
    for label in labels {
        if !providers.contains_key(&label.size) {
            return Err(Error::ConfigInvalid(format!(
                "no generation provider for size {}",
                label.size
            )));
        }
        rendered.insert(*label, templates.for_label(label)?);
    }
    let limiters: BTreeMap<ModelSize, Limiter> = providers
        .iter()
        .map(|(size, p)| (*size, Limiter::new(p.max_concurrency())))
        .collect();

    let mut summary = GenerationSummary::default();
    let mut jobs = Vec::new();
    for ex in excerpts {
        for label in labels {
            let id = pair_id(&ex.excerpt_id, label);
            if done.contains(&id) {
                summary.skipped += 1;
            } else {
                jobs.push((ex, *label, id));
            }
        }
    }
    // Chunks bound memory and let the sink persist progress as it goes.
    for chunk in jobs.chunks(64) {
        let records: Vec<Result<SimplificationRecord>> = chunk
            .par_iter()
            .map(|(ex, label, id)| {
                let prompt = render_prompt(&rendered[label], &ex.text)?;
                let provider = &providers[&label.size];
                let request = GenerationRequest {
                    pair_id: id,
                    excerpt: &ex.text,
                    label: *label,
                    prompt: &prompt,
                };
                let result = limiters[&label.size].run(|| provider.generate(&request));
                let mut record = SimplificationRecord {
                    pair_id: id.clone(),
                    excerpt_id: ex.excerpt_id.clone(),
                    label: *label,
                    prompt_hash: sha256_hex(prompt.as_bytes()),
                    source_text: ex.text.clone(),
                    output_text: String::new(),
                    model_id: provider.model_id().to_string(),
                    decoding: provider.decoding(),
                    provider_metadata: serde_json::Value::Null,
                    flags: BTreeSet::new(),
                    error: None,
                };
                match result {
                    Ok(out) => {
                        if out.text.trim().is_empty() {
                            record
                                .flags
                                .insert(crate::fingerprint::flags::EMPTY_OUTPUT.into());
                        }
                        record.output_text = out.text;
                        record.provider_metadata = out.metadata;
                    }
                    Err(e) if e.is_provider_failure() => {
                        log::warn!("pair {id}: {e}");
                        record
                            .flags
                            .insert(crate::fingerprint::flags::GENERATION_FAILED.into());
                        record.error = Some(e.to_string());
                    }
                    Err(e) => return Err(e),
                }
                Ok(record)
            })
            .collect();
        for record in records {
            let record = record?;
            summary.failed += usize::from(record.failed());
            summary.written += 1;
            sink(record)?;
        }
    }
    Ok(summary)
}

/// Reads an existing record file for resumption. A trailing partial line
/// left by an interrupted run is cut off the file.
pub fn load_checkpoint(path: &Path) -> Result<(Option<ArtifactHeader>, Vec<SimplificationRecord>)> {
    if !path.exists() {
        return Ok((None, Vec::new()));
    }
    let mut file = OpenOptions::new().read(true).write(true).open(path)?;
    let mut reader = BufReader::new(&mut file);
    let mut header = None;
    let mut records = Vec::new();
    let mut good_len = 0u64;
    let mut line = String::new();
    let mut n = 0;
    loop {
        line.clear();
        let read = reader.read_line(&mut line)?;
        if read == 0 {
            break;
        }
        n += 1;
        let complete = line.ends_with('\n');
        let trimmed = line.trim();
        if trimmed.is_empty() {
            good_len += read as u64;
            continue;
        }
        if n == 1 {
            if let Ok(v) = serde_json::from_str::<serde_json::Value>(trimmed) {
                if let Some(h) = v.get("header") {
                    header = Some(serde_json::from_value(h.clone())?);
                    good_len += read as u64;
                    continue;
                }
            }
        }
        if !complete {
            log::warn!("{}: dropping partial last line", path.display());
            break;
        }
        let record = serde_json::from_str(trimmed).map_err(|e| Error::Format {
            line: n,
            message: e.to_string(),
        })?;
        records.push(record);
        good_len += read as u64;
    }
    drop(reader);
    if good_len < file.metadata()?.len() {
        file.set_len(good_len)?;
        file.seek(SeekFrom::End(0))?;
    }
    Ok((header, records))
}

#[cfg(test)]
mod tests {
    use super::mock::MockGenerator;
    use super::*;
    use std::io::Write;

    fn excerpts(n: usize) -> Vec<SourceExcerpt> {
        (0..n)
            .map(|i| SourceExcerpt {
                excerpt_id: format!("a#w{i}"),
                text: "Die Stadt, die am Rhein liegt, wurde von den Römern gegründet. Sie ist alt."
                    .into(),
            })
            .collect()
    }

    fn providers(gen: MockGenerator) -> ProviderMap {
        let gen: Arc<dyn GenerationProvider> = Arc::new(gen);
        ModelSize::ALL.iter().map(|s| (*s, gen.clone())).collect()
    }

    fn run(
        n: usize,
        done: &BTreeSet<String>,
        gen: MockGenerator,
    ) -> (GenerationSummary, Vec<SimplificationRecord>) {
        let mut out = Vec::new();
        let s = generate_matrix(
            &excerpts(n),
            &ConfigurationLabel::all(),
            &TemplateSet::default(),
            &providers(gen),
            done,
            |r| {
                out.push(r);
                Ok(())
            },
        )
        .unwrap();
        (s, out)
    }

    #[test]
    fn two_excerpts_give_36_records() {
        let (s, recs) = run(2, &BTreeSet::new(), MockGenerator::new());
        assert_eq!(s.written, 36);
        assert_eq!(recs.len(), 36);
        let ids: BTreeSet<_> = recs.iter().map(|r| &r.pair_id).collect();
        assert_eq!(ids.len(), 36);
        assert!(recs
            .iter()
            .all(|r| r.label.validate().is_ok() && !r.failed()));
        let (_, again) = run(2, &BTreeSet::new(), MockGenerator::new());
        assert_eq!(recs, again);
    }

    #[test]
    fn full_matrix_count() {
        assert_eq!(826 * ConfigurationLabel::all().len(), 14_868);
    }

    #[test]
    fn resume_skips_done_pairs() {
        let (_, first) = run(2, &BTreeSet::new(), MockGenerator::new());
        let done: BTreeSet<String> = first[..10].iter().map(|r| r.pair_id.clone()).collect();
        let (s, rest) = run(2, &done, MockGenerator::new());
        assert_eq!((s.skipped, s.written), (10, 26));
        assert!(rest.iter().all(|r| !done.contains(&r.pair_id)));
        assert_eq!(rest[..], first[10..]);
    }

    #[test]
    fn failures_become_flagged_records() {
        let gen = MockGenerator::new().failing_on(["a#w1"]);
        let (s, recs) = run(2, &BTreeSet::new(), gen);
        assert_eq!(s.written, 36);
        assert_eq!(s.failed, 18);
        let failed = recs.iter().filter(|r| r.failed()).count();
        assert_eq!(failed, 18);
        assert!(recs
            .iter()
            .filter(|r| r.failed())
            .all(|r| r.flags.contains("generation_failed") && r.excerpt_id == "a#w1"));
    }

    #[test]
    fn missing_provider_is_config_error() {
        let mut p = providers(MockGenerator::new());
        p.remove(&ModelSize::B12);
        let err = generate_matrix(
            &excerpts(1),
            &ConfigurationLabel::all(),
            &TemplateSet::default(),
            &p,
            &BTreeSet::new(),
            |_| Ok(()),
        );
        assert!(matches!(err, Err(Error::ConfigInvalid(_))));
    }

    #[test]
    fn checkpoint_drops_partial_line() {
        let dir = std::env::temp_dir().join(format!("simprof-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("records.jsonl");
        let (_, recs) = run(1, &BTreeSet::new(), MockGenerator::new());
        let mut f = std::fs::File::create(&path).unwrap();
        crate::artifact::write_jsonl(&mut f, Some(&ArtifactHeader::new("h", 1)), &recs[..3])
            .unwrap();
        f.write_all(b"{\"pair_id\":\"trunc").unwrap();
        drop(f);
        let (h, back) = load_checkpoint(&path).unwrap();
        assert_eq!(h, Some(ArtifactHeader::new("h", 1)));
        assert_eq!(back, recs[..3]);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.ends_with('\n') && !text.contains("trunc"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
