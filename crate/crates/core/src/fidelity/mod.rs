//! Content correctness, content coverage and coherence from NLI judgments
//! and sentence embeddings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::SegmentedText;

mod cache;
pub mod mock;

pub use cache::{CachedEmbedding, CachedNli};

/// Three-way NLI probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NliJudgment {
    pub entailment: f64,
    pub neutral: f64,
    pub contradiction: f64,
}

impl NliJudgment {
    pub fn new(entailment: f64, neutral: f64, contradiction: f64) -> Result<Self> {
        let j = NliJudgment {
            entailment,
            neutral,
            contradiction,
        };
        j.validate()?;
        Ok(j)
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.entailment, self.neutral, self.contradiction];
        let in_range = parts
            .iter()
            .all(|p| p.is_finite() && (0.0..=1.0).contains(p));
        let sum: f64 = parts.iter().sum();
        if !in_range || (sum - 1.0).abs() > 1e-6 {
            return Err(Error::provider(
                "nli",
                format!("invalid judgment {parts:?}: probabilities must lie in [0,1] and sum to 1"),
            ));
        }
        Ok(())
    }
}

pub trait NliProvider: Send + Sync {
    fn model_id(&self) -> &str;

    /// Largest number of pairs per call.
    fn max_batch(&self) -> usize {
        64
    }

    /// Longest premise plus hypothesis, in characters.
    fn max_length(&self) -> usize {
        usize::MAX
    }

    /// Batches allowed in flight at once.
    fn max_concurrency(&self) -> usize {
        1
    }

    /// One judgment per `(premise, hypothesis)` pair, in order.
    fn judge(&self, pairs: &[(String, String)]) -> Result<Vec<NliJudgment>>;
}

pub trait EmbeddingProvider: Send + Sync {
    fn model_id(&self) -> &str;

    fn dimension(&self) -> usize;

    fn max_batch(&self) -> usize {
        64
    }

    fn max_concurrency(&self) -> usize {
        1
    }

    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>>;
}

impl<P: NliProvider + ?Sized> NliProvider for std::sync::Arc<P> {
    fn model_id(&self) -> &str {
        (**self).model_id()
    }
    fn max_batch(&self) -> usize {
        (**self).max_batch()
    }
    fn max_length(&self) -> usize {
        (**self).max_length()
    }
    fn max_concurrency(&self) -> usize {
        (**self).max_concurrency()
    }
    fn judge(&self, pairs: &[(String, String)]) -> Result<Vec<NliJudgment>> {
        (**self).judge(pairs)
    }
}

impl<P: EmbeddingProvider + ?Sized> EmbeddingProvider for std::sync::Arc<P> {
    fn model_id(&self) -> &str {
        (**self).model_id()
    }
    fn dimension(&self) -> usize {
        (**self).dimension()
    }
    fn max_batch(&self) -> usize {
        (**self).max_batch()
    }
    fn max_concurrency(&self) -> usize {
        (**self).max_concurrency()
    }
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        (**self).embed(texts)
    }
}

pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceEvidence {
    pub sentence_index: usize,
    pub judgment: NliJudgment,
    /// Cosine of source sentence and simplification, clamped to [0, 1].
    pub similarity: f64,
    pub cov_term: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FidelityEvidence {
    pub per_source_sentence: Vec<SentenceEvidence>,
    /// The hypothesis was cut at a sentence boundary to fit the NLI model.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub hypothesis_truncated: bool,
    /// Number of simplification sentences kept in the hypothesis.
    pub hypothesis_sentences: usize,
    /// The simplification was empty; scores are 0 by convention.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empty_simplification: bool,
}

/// Correctness and coverage in percent, with shared evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityScores {
    pub cor: f64,
    pub cov: f64,
    pub evidence: FidelityEvidence,
}

/// The hypothesis text: the whole simplification, or as many leading
/// sentences as fit into `budget` characters. A single oversized first
/// sentence is cut at a character boundary.
pub fn build_hypothesis(simplification: &SegmentedText, budget: usize) -> (String, usize, bool) {
    let full = simplification.raw.content.trim();
    let n = simplification.sentences.len();
    if full.chars().count() <= budget {
        return (full.to_string(), n, false);
    }
    let mut out = String::new();
    let mut kept = 0;
    for sentence in &simplification.sentences {
        let extra = sentence.text.chars().count() + usize::from(!out.is_empty());
        if out.chars().count() + extra > budget {
            break;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&sentence.text);
        kept += 1;
    }
    if kept == 0 {
        if let Some(first) = simplification.sentences.first() {
            out = first.text.chars().take(budget).collect();
            kept = 1;
        }
    }
    (out, kept, true)
}

fn judge_batched(nli: &dyn NliProvider, pairs: &[(String, String)]) -> Result<Vec<NliJudgment>> {
    let mut out = Vec::with_capacity(pairs.len());
    for chunk in pairs.chunks(nli.max_batch().max(1)) {
        let judgments = nli.judge(chunk)?;
        if judgments.len() != chunk.len() {
            return Err(Error::provider(
                nli.model_id(),
                format!("{} judgments for {} pairs", judgments.len(), chunk.len()),
            ));
        }
        for j in &judgments {
            j.validate()
                .map_err(|e| Error::provider(nli.model_id(), e.to_string()))?;
        }
        out.extend(judgments);
    }
    Ok(out)
}

pub(crate) fn embed_batched(
    embed: &dyn EmbeddingProvider,
    texts: &[String],
) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(texts.len());
    for chunk in texts.chunks(embed.max_batch().max(1)) {
        let vectors = embed.embed(chunk)?;
        if vectors.len() != chunk.len() {
            return Err(Error::provider(
                embed.model_id(),
                format!("{} embeddings for {} texts", vectors.len(), chunk.len()),
            ));
        }
        for v in &vectors {
            if v.len() != embed.dimension() {
                return Err(Error::provider(
                    embed.model_id(),
                    format!(
                        "embedding of dimension {} instead of {}",
                        v.len(),
                        embed.dimension()
                    ),
                ));
            }
        }
        out.extend(vectors);
    }
    Ok(out)
}

fn nli_pass(
    source: &SegmentedText,
    simplification: &SegmentedText,
    nli: &dyn NliProvider,
) -> Result<Option<(Vec<NliJudgment>, FidelityEvidence)>> {
    if source.sentences.is_empty() {
        return Err(Error::EmptySource);
    }
    if simplification.is_empty() {
        return Ok(None);
    }
    let longest = source
        .sentences
        .iter()
        .map(|s| s.text.chars().count())
        .max()
        .unwrap_or(0);
    let budget = nli.max_length().saturating_sub(longest).max(1);
    let (hypothesis, kept, truncated) = build_hypothesis(simplification, budget);
    if truncated {
        log::debug!(
            "hypothesis truncated to {kept} sentences for {}",
            nli.model_id()
        );
    }
    let pairs: Vec<(String, String)> = source
        .sentences
        .iter()
        .map(|s| (s.text.clone(), hypothesis.clone()))
        .collect();
    let judgments = judge_batched(nli, &pairs)?;
    let evidence = FidelityEvidence {
        per_source_sentence: Vec::new(),
        hypothesis_truncated: truncated,
        hypothesis_sentences: kept,
        empty_simplification: false,
    };
    Ok(Some((judgments, evidence)))
}

fn empty_evidence() -> FidelityEvidence {
    FidelityEvidence {
        empty_simplification: true,
        ..FidelityEvidence::default()
    }
}

fn mean(xs: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = xs.len();
    xs.sum::<f64>() / n as f64
}

/// Mean of `1 − P(contradiction)` over source sentences, in percent.
///
/// Each source sentence is a premise; the whole simplification is the
/// hypothesis. An empty simplification scores 0.
pub fn content_correctness(
    source: &SegmentedText,
    simplification: &SegmentedText,
    nli: &dyn NliProvider,
) -> Result<(f64, FidelityEvidence)> {
    let Some((judgments, mut evidence)) = nli_pass(source, simplification, nli)? else {
        return Ok((0.0, empty_evidence()));
    };
    evidence.per_source_sentence = judgments
        .iter()
        .enumerate()
        .map(|(i, j)| SentenceEvidence {
            sentence_index: i,
            judgment: *j,
            similarity: 0.0,
            cov_term: 0.0,
        })
        .collect();
    let score = mean(judgments.iter().map(|j| 1.0 - j.contradiction)) * 100.0;
    Ok((score, evidence))
}

/// Mean of `P(entailment) · sim(sentence, simplification)`, in percent.
pub fn content_coverage(
    source: &SegmentedText,
    simplification: &SegmentedText,
    nli: &dyn NliProvider,
    embed: &dyn EmbeddingProvider,
) -> Result<(f64, FidelityEvidence)> {
    let scores = fidelity(source, simplification, nli, embed)?;
    Ok((scores.cov, scores.evidence))
}

/// Correctness and coverage from a single NLI batch.
pub fn fidelity(
    source: &SegmentedText,
    simplification: &SegmentedText,
    nli: &dyn NliProvider,
    embed: &dyn EmbeddingProvider,
) -> Result<FidelityScores> {
    let Some((judgments, mut evidence)) = nli_pass(source, simplification, nli)? else {
        return Ok(FidelityScores {
            cor: 0.0,
            cov: 0.0,
            evidence: empty_evidence(),
        });
    };
    let mut texts: Vec<String> = source.sentences.iter().map(|s| s.text.clone()).collect();
    texts.push(simplification.raw.content.trim().to_string());
    let vectors = embed_batched(embed, &texts)?;
    let (hyp, premises) = vectors.split_last().expect("at least one vector");
    let mut per = Vec::with_capacity(judgments.len());
    for (i, (j, v)) in judgments.iter().zip(premises).enumerate() {
        let similarity = cosine_similarity(v, hyp)?.max(0.0);
        per.push(SentenceEvidence {
            sentence_index: i,
            judgment: *j,
            similarity,
            cov_term: j.entailment * similarity,
        });
    }
    let cor = mean(per.iter().map(|e| 1.0 - e.judgment.contradiction)) * 100.0;
    let cov = mean(per.iter().map(|e| e.cov_term)) * 100.0;
    evidence.per_source_sentence = per;
    Ok(FidelityScores { cor, cov, evidence })
}

/// Mean adjacent-sentence cosine mapped to [0, 1]; 1 for a single sentence.
pub fn coherence(simplification: &SegmentedText, embed: &dyn EmbeddingProvider) -> Result<f64> {
    let sentences: Vec<String> = simplification
        .sentences
        .iter()
        .filter(|s| s.word_count() > 0)
        .map(|s| s.text.clone())
        .collect();
    match sentences.len() {
        0 => Err(Error::EmptySimplification),
        1 => Ok(1.0),
        _ => {
            let vectors = embed_batched(embed, &sentences)?;
            coherence_of(&vectors)
        }
    }
}

/// Coherence of already embedded sentences.
pub fn coherence_of(vectors: &[Vec<f64>]) -> Result<f64> {
    if vectors.is_empty() {
        return Err(Error::EmptySimplification);
    }
    if vectors.len() == 1 {
        return Ok(1.0);
    }
    let mut sum = 0.0;
    for pair in vectors.windows(2) {
        sum += cosine_similarity(&pair[0], &pair[1])?;
    }
    Ok((sum / (vectors.len() - 1) as f64 + 1.0) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::mock::{FixedEmbedding, FixedNli};
    use super::*;
    use crate::text::{segment, HeuristicAnnotator, RawText};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn doc(text: &str) -> SegmentedText {
        segment(&RawText::new("t", text), &HeuristicAnnotator::new()).unwrap()
    }

    fn j(e: f64, c: f64) -> NliJudgment {
        NliJudgment::new(e, 1.0 - e - c, c).unwrap()
    }

    #[test]
    fn cosine_values() {
        assert_abs_diff_eq!(cosine_similarity(&[1.0, 0.0], &[1.0, 0.0]).unwrap(), 1.0);
        assert_abs_diff_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(
            cosine_similarity(&[1.0, 1.0], &[1.0, 0.0]).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
        assert!(matches!(
            cosine_similarity(&[0.0, 0.0], &[1.0, 0.0]),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            cosine_similarity(&[1.0], &[1.0, 0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn correctness_arithmetic() {
        let src = doc("Der Hund bellt. Die Katze schläft.");
        let simp = doc("Der Hund bellt.");
        let nli = FixedNli::sequence(vec![j(0.0, 1.0), j(1.0, 0.0)]);
        let (score, ev) = content_correctness(&src, &simp, &nli).unwrap();
        assert_abs_diff_eq!(score, 50.0, epsilon = 1e-9);
        assert_eq!(ev.per_source_sentence.len(), 2);
        assert_eq!(ev.hypothesis_sentences, 1);
    }

    #[test]
    fn coverage_arithmetic() {
        let src = doc("Der Hund bellt.");
        let simp = doc("Ein Hund bellt.");
        let nli = FixedNli::constant(j(0.8, 0.0));
        let emb = FixedEmbedding::pair_with_cosine(0.9);
        let (cov, ev) = content_coverage(&src, &simp, &nli, &emb).unwrap();
        assert_abs_diff_eq!(cov, 72.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ev.per_source_sentence[0].cov_term, 0.72, epsilon = 1e-12);
    }

    #[test]
    fn empty_simplification_scores_zero() {
        let src = doc("Der Hund bellt.");
        let simp = SegmentedText::empty(RawText::new("s", ""));
        let nli = FixedNli::constant(j(1.0, 0.0));
        let (score, ev) = content_correctness(&src, &simp, &nli).unwrap();
        assert_eq!(score, 0.0);
        assert!(ev.empty_simplification);
        assert!(matches!(
            coherence(&simp, &FixedEmbedding::constant(vec![1.0])),
            Err(Error::EmptySimplification)
        ));
    }

    #[test]
    fn truncation_at_sentence_boundary() {
        let simp = doc("Eins ist gut. Zwei ist gut. Drei ist gut.");
        let (h, kept, cut) = build_hypothesis(&simp, 28);
        assert_eq!(h, "Eins ist gut. Zwei ist gut.");
        assert_eq!(kept, 2);
        assert!(cut);
        let (h, _, cut) = build_hypothesis(&simp, 1000);
        assert_eq!(h, simp.raw.content);
        assert!(!cut);
    }

    #[test]
    fn coherence_values() {
        let e = |v: &[f64]| v.to_vec();
        assert_eq!(coherence_of(&[e(&[1.0, 0.0])]).unwrap(), 1.0);
        assert_abs_diff_eq!(
            coherence_of(&[e(&[1.0, 0.0]), e(&[0.0, 1.0])]).unwrap(),
            0.5
        );
        assert_abs_diff_eq!(
            coherence_of(&[e(&[1.0, 0.0]), e(&[1.0, 0.0]), e(&[0.0, 1.0])]).unwrap(),
            0.75
        );
        let simp = doc("Der Hund bellt. Der Hund bellt. Der Hund bellt.");
        assert_abs_diff_eq!(
            coherence(&simp, &FixedEmbedding::constant(vec![0.3, 0.4])).unwrap(),
            1.0
        );
    }

    #[test]
    fn batches_respect_limit() {
        let src = doc("A ist da. B ist da. C ist da. D ist da. E ist da.");
        let simp = doc("Alles ist da.");
        let nli = FixedNli::constant(j(0.5, 0.2)).with_max_batch(2);
        let (score, _) = content_correctness(&src, &simp, &nli).unwrap();
        assert_abs_diff_eq!(score, 80.0, epsilon = 1e-9);
        assert_eq!(nli.calls(), 3);
    }

    proptest! {
        #[test]
        fn cosine_self_and_symmetry(a in prop::collection::vec(-10f64..10.0, 1..8), b in prop::collection::vec(-10f64..10.0, 1..8)) {
            prop_assume!(a.iter().any(|x| x.abs() > 1e-6));
            prop_assert!((cosine_similarity(&a, &a).unwrap() - 1.0).abs() < 1e-12);
            if a.len() == b.len() && b.iter().any(|x| x.abs() > 1e-6) {
                prop_assert_eq!(cosine_similarity(&a, &b).unwrap(), cosine_similarity(&b, &a).unwrap());
            }
        }

        #[test]
        fn constant_judgment_gives_closed_form(c in 0f64..=1.0) {
            let src = doc("Der Hund bellt. Die Katze schläft. Der Vogel singt.");
            let simp = doc("Tiere leben hier.");
            let nli = FixedNli::constant(NliJudgment::new(0.0, 1.0 - c, c).unwrap());
            let (score, _) = content_correctness(&src, &simp, &nli).unwrap();
            prop_assert!((score - 100.0 * (1.0 - c)).abs() < 1e-9);
        }
    }
}
