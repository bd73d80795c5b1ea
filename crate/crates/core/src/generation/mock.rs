//! Rule-based stand-in for a generation model.
//!
//! Output depends on the strategy, size and few-shot flag in a fixed way,
//! so fingerprints of different configurations differ measurably.

use std::collections::BTreeSet;

use super::{GenerationOutput, GenerationProvider, GenerationRequest};
use crate::error::{Error, Result};
use crate::label::{ModelSize, PromptStrategy};

#[derive(Debug, Clone, Default)]
pub struct MockGenerator {
    fail: BTreeSet<String>,
    empty: BTreeSet<String>,
}

impl MockGenerator {
    pub fn new() -> Self {
        MockGenerator::default()
    }

    /// Fails every request for these excerpt ids.
    pub fn failing_on<'a>(mut self, excerpt_ids: impl IntoIterator<Item = &'a str>) -> Self {
        self.fail.extend(excerpt_ids.into_iter().map(String::from));
        self
    }

    /// Returns an empty output for these excerpt ids.
    pub fn empty_on<'a>(mut self, excerpt_ids: impl IntoIterator<Item = &'a str>) -> Self {
        self.empty.extend(excerpt_ids.into_iter().map(String::from));
        self
    }
}

fn excerpt_of(pair_id: &str) -> &str {
    pair_id.split('|').next().unwrap_or(pair_id)
}

fn sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let chars: Vec<char> = text.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        cur.push(c);
        let end =
            matches!(c, '.' | '!' | '?') && chars.get(i + 1).is_none_or(|n| n.is_whitespace());
        if end {
            out.push(cur.trim().to_string());
            cur.clear();
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn finish(s: &str) -> String {
    let s = s.trim().trim_end_matches([',', ';', ':']).trim();
    if s.ends_with(['.', '!', '?']) {
        s.to_string()
    } else {
        format!("{s}.")
    }
}

/// Cuts a sentence at commas into separate sentences.
fn split_at_commas(s: &str) -> Vec<String> {
    s.split(", ")
        .filter(|p| p.split_whitespace().count() >= 2)
        .map(|p| finish(&capitalize(p)))
        .collect()
}

fn truncate_words(s: &str, max: usize) -> String {
    let words: Vec<&str> = s.split_whitespace().collect();
    if words.len() <= max {
        return s.to_string();
    }
    finish(&words[..max].join(" "))
}

/// Doubles the second word, a typical small-model slip.
fn stutter(s: &str) -> String {
    let mut words: Vec<&str> = s.split_whitespace().collect();
    if words.len() > 3 {
        words.insert(1, words[1]);
    }
    words.join(" ")
}

pub fn simplify(
    excerpt: &str,
    strategy: PromptStrategy,
    size: ModelSize,
    few_shot: bool,
) -> String {
    let mut out: Vec<String> = Vec::new();
    let drop_every = match (size, strategy) {
        (ModelSize::B1, PromptStrategy::Content) => 4,
        (ModelSize::B1, _) => 3,
        (ModelSize::B4, PromptStrategy::Content) => 0,
        (ModelSize::B4, _) => 5,
        (ModelSize::B12, _) => 0,
    };
    let bonus: isize = match size {
        ModelSize::B1 => -2,
        ModelSize::B4 => 0,
        ModelSize::B12 => 3,
    } - if few_shot { 3 } else { 0 };
    let cap = |base: isize| (base + bonus).max(4) as usize;
    for (i, s) in sentences(excerpt).iter().enumerate() {
        if drop_every > 0 && i % drop_every == drop_every - 1 {
            continue;
        }
        match strategy {
            PromptStrategy::Plain => out.push(truncate_words(s, cap(20))),
            PromptStrategy::Target => {
                out.extend(split_at_commas(s).iter().map(|p| truncate_words(p, cap(7))))
            }
            PromptStrategy::Rules => {
                out.extend(split_at_commas(s).iter().map(|p| truncate_words(p, cap(6))))
            }
            PromptStrategy::Content => {
                out.extend(split_at_commas(s).iter().map(|p| truncate_words(p, cap(9))))
            }
        }
    }
    if strategy == PromptStrategy::Content && size != ModelSize::B1 {
        if let Some(first) = out.first().cloned() {
            out.push(format!(
                "Das heißt: {}",
                first.chars().next().map_or(String::new(), |c| {
                    c.to_lowercase().chain(first.chars().skip(1)).collect()
                })
            ));
        }
    }
    if strategy == PromptStrategy::Target {
        out.push("Das ist wichtig.".to_string());
    }
    if size == ModelSize::B1 {
        if let Some(first) = out.first_mut() {
            *first = stutter(first);
        }
    }
    out.join(" ")
}

impl GenerationProvider for MockGenerator {
    fn model_id(&self) -> &str {
        "mock-generator"
    }

    fn max_concurrency(&self) -> usize {
        usize::MAX
    }

    fn generate(&self, request: &GenerationRequest) -> Result<GenerationOutput> {
        let excerpt_id = excerpt_of(request.pair_id);
        if self.fail.contains(excerpt_id) {
            return Err(Error::provider(
                "mock-generator",
                format!("injected failure for {excerpt_id}"),
            ));
        }
        let label = request.label;
        let text = if self.empty.contains(excerpt_id) {
            String::new()
        } else {
            simplify(
                request.excerpt,
                label.strategy,
                label.size,
                label.few_shot == Some(true),
            )
        };
        Ok(GenerationOutput {
            text,
            metadata: serde_json::json!({ "provider": "mock", "label": label.to_string() }),
        })
    }
}
