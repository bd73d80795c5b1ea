//! Deterministic in-process providers for tests and hermetic runs.

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use sha2::{Digest, Sha256};

use super::{EmbeddingProvider, NliJudgment, NliProvider};
use crate::error::Result;
use crate::text::lexicon as lx;

/// Returns preset judgments: one constant, or a list consumed in call
/// order and cycled.
pub struct FixedNli {
    judgments: Vec<NliJudgment>,
    cursor: AtomicUsize,
    calls: AtomicUsize,
    max_batch: usize,
}

impl FixedNli {
    pub fn constant(judgment: NliJudgment) -> Self {
        FixedNli::sequence(vec![judgment])
    }

    pub fn sequence(judgments: Vec<NliJudgment>) -> Self {
        assert!(!judgments.is_empty(), "at least one judgment");
        FixedNli {
            judgments,
            cursor: AtomicUsize::new(0),
            calls: AtomicUsize::new(0),
            max_batch: 64,
        }
    }

    pub fn with_max_batch(mut self, max_batch: usize) -> Self {
        self.max_batch = max_batch;
        self
    }

    /// Number of `judge` calls so far.
    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }
}

impl NliProvider for FixedNli {
    fn model_id(&self) -> &str {
        "fixed-nli"
    }

    fn max_batch(&self) -> usize {
        self.max_batch
    }

    fn judge(&self, pairs: &[(String, String)]) -> Result<Vec<NliJudgment>> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        let start = self.cursor.fetch_add(pairs.len(), Ordering::SeqCst);
        Ok((0..pairs.len())
            .map(|k| self.judgments[(start + k) % self.judgments.len()])
            .collect())
    }
}

/// Returns preset vectors, looked up by text or cycled in call order.
pub struct FixedEmbedding {
    by_text: HashMap<String, Vec<f64>>,
    sequence: Vec<Vec<f64>>,
    cursor: AtomicUsize,
    dimension: usize,
}

impl FixedEmbedding {
    pub fn constant(vector: Vec<f64>) -> Self {
        FixedEmbedding::sequence(vec![vector])
    }

    pub fn sequence(vectors: Vec<Vec<f64>>) -> Self {
        let dimension = vectors.first().map_or(0, Vec::len);
        FixedEmbedding {
            by_text: HashMap::new(),
            sequence: vectors,
            cursor: AtomicUsize::new(0),
            dimension,
        }
    }

    /// Texts found in `map` get their vector; others fall back to the
    /// cycled `default` list.
    pub fn by_text(map: HashMap<String, Vec<f64>>, default: Vec<f64>) -> Self {
        let mut e = FixedEmbedding::constant(default);
        e.by_text = map;
        e
    }

    /// First text of each call maps to `(1, 0)`, every later one to a unit
    /// vector at cosine `c` from it.
    pub fn pair_with_cosine(c: f64) -> Self {
        FixedEmbedding::sequence(vec![vec![1.0, 0.0], vec![c, (1.0 - c * c).max(0.0).sqrt()]])
    }
}

impl EmbeddingProvider for FixedEmbedding {
    fn model_id(&self) -> &str {
        "fixed-embedding"
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        Ok(texts
            .iter()
            .map(|t| match self.by_text.get(t) {
                Some(v) => v.clone(),
                None => {
                    let k = self.cursor.fetch_add(1, Ordering::SeqCst);
                    self.sequence[k % self.sequence.len()].clone()
                }
            })
            .collect())
    }
}

fn words(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
}

fn is_function_word(w: &str) -> bool {
    [
        lx::DETERMINERS,
        lx::PRONOUNS,
        lx::RELATIVE_PRONOUNS,
        lx::ADPOSITIONS,
        lx::COORDINATING_CONJUNCTIONS,
        lx::SUBORDINATING_CONJUNCTIONS,
        lx::AUXILIARIES,
        lx::PARTICLES,
    ]
    .iter()
    .any(|list| list.contains(&w))
}

fn stem(w: &str) -> String {
    let n = w.chars().count();
    for suffix in ["ern", "en", "er", "es", "em", "e", "n", "s"] {
        if n > suffix.len() + 3 {
            if let Some(s) = w.strip_suffix(suffix) {
                return s.to_string();
            }
        }
    }
    w.to_string()
}

fn content_words(text: &str) -> BTreeSet<String> {
    words(text)
        .filter(|w| {
            w.chars().count() >= 3 && !is_function_word(w) && !lx::NEGATIONS.contains(&w.as_str())
        })
        .map(|w| stem(&w))
        .collect()
}

fn has_negation(text: &str) -> bool {
    words(text).any(|w| lx::NEGATIONS.contains(&w.as_str()))
}

fn numbers(text: &str) -> BTreeSet<String> {
    words(text)
        .filter(|w| w.chars().all(|c| c.is_ascii_digit()))
        .collect()
}

/// Word-overlap entailment with negation and number mismatch as
/// contradiction signals.
///
/// `P(entailment)` grows with the share of premise content words found in
/// the hypothesis. Contradiction rises when the best-matching hypothesis
/// sentence disagrees with the premise on negation or on numbers.
#[derive(Debug, Clone, Default)]
pub struct LexicalNli;

impl LexicalNli {
    pub fn judge_pair(premise: &str, hypothesis: &str) -> NliJudgment {
        let p = content_words(premise);
        let h = content_words(hypothesis);
        let overlap = if p.is_empty() {
            1.0
        } else {
            p.intersection(&h).count() as f64 / p.len() as f64
        };
        let best = hypothesis
            .split_inclusive(['.', '!', '?'])
            .max_by_key(|s| {
                (
                    content_words(s).intersection(&p).count(),
                    std::cmp::Reverse(s.len()),
                )
            })
            .unwrap_or(hypothesis);
        let shared = content_words(best).intersection(&p).count() > 0;
        let negation_flip = shared && has_negation(premise) != has_negation(best);
        let (pn, bn) = (numbers(premise), numbers(best));
        let number_clash = shared && !pn.is_empty() && !bn.is_empty() && pn.is_disjoint(&bn);
        let contradiction = (0.02
            + 0.7 * f64::from(u8::from(negation_flip))
            + 0.5 * f64::from(u8::from(number_clash)))
        .min(0.95);
        let entailment = (1.0 - contradiction) * overlap;
        NliJudgment {
            entailment,
            neutral: (1.0 - contradiction - entailment).max(0.0),
            contradiction,
        }
    }
}

impl NliProvider for LexicalNli {
    fn model_id(&self) -> &str {
        "lexical-nli"
    }

    fn max_length(&self) -> usize {
        4000
    }

    fn max_concurrency(&self) -> usize {
        usize::MAX
    }

    fn judge(&self, pairs: &[(String, String)]) -> Result<Vec<NliJudgment>> {
        Ok(pairs.iter().map(|(p, h)| Self::judge_pair(p, h)).collect())
    }
}

/// Feature-hashing bag of words and character trigrams, L2-normalized.
#[derive(Debug, Clone)]
pub struct HashingEmbedding {
    dimension: usize,
    id: String,
}

impl Default for HashingEmbedding {
    fn default() -> Self {
        HashingEmbedding::new(256)
    }
}

impl HashingEmbedding {
    pub fn new(dimension: usize) -> Self {
        assert!(dimension >= 2, "dimension must be at least 2");
        HashingEmbedding {
            dimension,
            id: format!("hashing-{dimension}"),
        }
    }

    fn bucket(&self, feature: &str) -> (usize, f64) {
        let digest = Sha256::digest(feature.as_bytes());
        let mut b = [0u8; 8];
        b.copy_from_slice(&digest[..8]);
        let h = u64::from_le_bytes(b);
        (
            (h % self.dimension as u64) as usize,
            if h >> 63 == 0 { 1.0 } else { -1.0 },
        )
    }

    pub fn embed_one(&self, text: &str) -> Vec<f64> {
        let mut v = vec![0.0; self.dimension];
        for w in words(text) {
            let (i, s) = self.bucket(&format!("w:{w}"));
            v[i] += s;
            let padded: Vec<char> = format!("^{w}$").chars().collect();
            for tri in padded.windows(3) {
                let (i, s) = self.bucket(&format!("c:{}", tri.iter().collect::<String>()));
                v[i] += 0.5 * s;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            v[0] = 1.0;
        } else {
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }
}

impl EmbeddingProvider for HashingEmbedding {
    fn model_id(&self) -> &str {
        &self.id
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn max_concurrency(&self) -> usize {
        usize::MAX
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        Ok(texts.iter().map(|t| self.embed_one(t)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fidelity::cosine_similarity;

    #[test]
    fn lexical_nli_signals() {
        let p = "Die Stadt liegt am Rhein.";
        let same = LexicalNli::judge_pair(p, "Die Stadt liegt am Rhein.");
        let negated = LexicalNli::judge_pair(p, "Die Stadt liegt nicht am Rhein.");
        let unrelated = LexicalNli::judge_pair(p, "Der Hund bellt.");
        assert!(same.entailment > 0.9);
        assert!(negated.contradiction > 0.5);
        assert!(unrelated.entailment < 0.1);
        assert!(unrelated.contradiction < 0.1);
        for j in [same, negated, unrelated] {
            j.validate().unwrap();
        }
        let numbers = LexicalNli::judge_pair(
            "Die Stadt hat 5000 Einwohner.",
            "Die Stadt hat 300 Einwohner.",
        );
        assert!(numbers.contradiction > 0.4);
    }

    #[test]
    fn hashing_embedding_is_unit_and_deterministic() {
        let e = HashingEmbedding::default();
        let a = e.embed_one("Der Hund bellt.");
        let b = e.embed_one("Der Hund bellt.");
        assert_eq!(a, b);
        let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        let near = cosine_similarity(&a, &e.embed_one("Der Hund bellt laut.")).unwrap();
        let far = cosine_similarity(&a, &e.embed_one("Quantenphysik ist schwierig.")).unwrap();
        assert!(near > far);
        assert_eq!(e.embed_one("...")[0], 1.0);
    }
}
