//! Per-simplification fingerprints, their aggregation into model
//! fingerprints, and the length, entity and sentence-length heuristics.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fidelity::{coherence, fidelity, EmbeddingProvider, FidelityEvidence, NliProvider};
use crate::label::ConfigurationLabel;
use crate::readability::{fbr_inputs, fbr_normalized, fbr_raw, FbrScores, ReadabilityConfig};
use crate::rules::checker::{checker_violations, GrammarChecker};
use crate::rules::{
    apply_rules_lenient, builtin_ruleset, rule_score_with_fallback, RuleCategory, RuleScore,
    RuleSet, Violation,
};
use crate::text::{segment, AnnotationProvider, Capability, RawText, SegmentedText};

mod features;
pub mod io;
pub mod spider;

pub use features::{feature_index, Features, AUX_NAMES, FEATURE_COUNT, FEATURE_NAMES};

pub mod flags {
    pub const EMPTY_OUTPUT: &str = "empty_output";
    pub const NO_CLAUSES: &str = "no_clauses";
    pub const NLI_TRUNCATED: &str = "nli_truncated";
    pub const RULES_SKIPPED: &str = "rules_skipped";
    pub const NO_NER: &str = "no_ner";
    pub const GENERATION_FAILED: &str = "generation_failed";
}

fn non_ws_chars(text: &str) -> usize {
    text.chars().filter(|c| !c.is_whitespace()).count()
}

/// Non-whitespace character count of the simplification over that of the
/// source.
pub fn length_ratio(source: &RawText, simplification: &RawText) -> Result<f64> {
    let src = non_ws_chars(&source.content);
    if src == 0 {
        return Err(Error::EmptySource);
    }
    Ok(non_ws_chars(&simplification.content) as f64 / src as f64)
}

fn normalize(text: &str) -> String {
    let mut out = String::from(" ");
    for word in text
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
    {
        out.push_str(&word.to_lowercase());
        out.push(' ');
    }
    out
}

/// Share of distinct source entity surfaces that reappear, as whole words,
/// in the simplification. 1 when the source names no entity.
pub fn entity_retention(source: &SegmentedText, simplification: &SegmentedText) -> Result<f64> {
    if !source.has(Capability::Ner) {
        return Err(Error::MissingAnnotation {
            rule_id: "entity_retention".into(),
            capability: Capability::Ner,
        });
    }
    let entities: BTreeSet<String> = source
        .entities
        .iter()
        .map(|e| normalize(&e.surface))
        .filter(|e| !e.trim().is_empty())
        .collect();
    if entities.is_empty() {
        return Ok(1.0);
    }
    let haystack = normalize(&simplification.raw.content);
    let found = entities
        .iter()
        .filter(|e| haystack.contains(e.as_str()))
        .count();
    Ok(found as f64 / entities.len() as f64)
}

/// Mean number of word tokens per sentence.
pub fn avg_sentence_length(simplification: &SegmentedText) -> Result<f64> {
    let counts: Vec<usize> = simplification
        .sentences
        .iter()
        .map(|s| s.word_count())
        .filter(|&n| n > 0)
        .collect();
    if counts.is_empty() {
        return Err(Error::EmptySimplification);
    }
    Ok(counts.iter().sum::<usize>() as f64 / counts.len() as f64)
}

/// Plain length statistics of a simplification.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub char_count: f64,
    pub sentence_count: f64,
    /// Mean characters per word token.
    pub avg_word_length: f64,
}

impl LengthStats {
    pub fn of(doc: &SegmentedText) -> Self {
        let words: Vec<usize> = doc
            .sentences
            .iter()
            .flat_map(|s| s.words())
            .map(|t| t.text.chars().count())
            .collect();
        LengthStats {
            char_count: non_ws_chars(&doc.raw.content) as f64,
            sentence_count: doc.sentences.iter().filter(|s| s.word_count() > 0).count() as f64,
            avg_word_length: if words.is_empty() {
                0.0
            } else {
                words.iter().sum::<usize>() as f64 / words.len() as f64
            },
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.char_count, self.sentence_count, self.avg_word_length]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FingerprintEvidence {
    pub simplicity: Vec<Violation>,
    pub correctness: Vec<Violation>,
    pub fidelity: FidelityEvidence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub readability: Option<FbrScores>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped_rules: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub pair_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<ConfigurationLabel>,
    pub features: Features,
    pub length_stats: LengthStats,
    #[serde(default)]
    pub flags: BTreeSet<String>,
    #[serde(default)]
    pub evidence: FingerprintEvidence,
}

impl Fingerprint {
    pub fn to_feature_vector(&self) -> [f64; FEATURE_COUNT] {
        self.features.0
    }
}

pub fn to_feature_vector(fp: &Fingerprint) -> [f64; FEATURE_COUNT] {
    fp.to_feature_vector()
}

/// Source and simplification of one generated pair.
#[derive(Debug, Clone)]
pub struct ProfilePair {
    pub pair_id: String,
    pub label: Option<ConfigurationLabel>,
    pub source: SegmentedText,
    pub simplification: SegmentedText,
}

impl ProfilePair {
    /// Segments both texts. A whitespace-only simplification becomes an
    /// empty document rather than an error.
    pub fn prepare(
        pair_id: impl Into<String>,
        label: Option<ConfigurationLabel>,
        source: &RawText,
        simplification: &RawText,
        annotator: &dyn AnnotationProvider,
    ) -> Result<Self> {
        let pair_id = pair_id.into();
        let source = segment(source, annotator).map_err(|e| match e {
            Error::EmptyInput => Error::EmptySource,
            other => with_context(other, &pair_id),
        })?;
        let simplification = match segment(simplification, annotator) {
            Ok(doc) => doc,
            Err(Error::EmptyInput) => SegmentedText::empty(simplification.clone()),
            Err(e) => return Err(with_context(e, &pair_id)),
        };
        Ok(ProfilePair {
            pair_id,
            label,
            source,
            simplification,
        })
    }
}

pub struct Providers<'a> {
    pub nli: &'a dyn NliProvider,
    pub embed: &'a dyn EmbeddingProvider,
    pub checker: Option<&'a dyn GrammarChecker>,
}

#[derive(Debug, Clone)]
pub struct ProfileConfig {
    pub readability: ReadabilityConfig,
    pub simplicity: RuleSet,
    pub correctness: RuleSet,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            readability: ReadabilityConfig::default(),
            simplicity: builtin_ruleset(RuleCategory::Simplicity),
            correctness: builtin_ruleset(RuleCategory::Correctness),
        }
    }
}

/// Prefixes provider failures with the pair id.
pub fn with_context(err: Error, pair_id: &str) -> Error {
    match err {
        Error::ProviderFailure { provider, message } => Error::ProviderFailure {
            provider,
            message: format!("pair {pair_id}: {message}"),
        },
        Error::AnnotationFailure { provider, message } => Error::AnnotationFailure {
            provider,
            message: format!("pair {pair_id}: {message}"),
        },
        other => other,
    }
}

/// Fingerprint of an empty simplification: every metric 0, except entity
/// retention, which is 1 when the source has no entities.
fn empty_fingerprint(pair: &ProfilePair) -> Fingerprint {
    let mut features = Features::default();
    if pair.source.has(Capability::Ner) && pair.source.entities.is_empty() {
        features.set("ENT", 1.0);
    }
    Fingerprint {
        pair_id: pair.pair_id.clone(),
        label: pair.label,
        features,
        length_stats: LengthStats::default(),
        flags: [flags::EMPTY_OUTPUT.to_string()].into_iter().collect(),
        evidence: FingerprintEvidence {
            fidelity: FidelityEvidence {
                empty_simplification: true,
                ..FidelityEvidence::default()
            },
            ..FingerprintEvidence::default()
        },
    }
}

fn score_category(
    doc: &SegmentedText,
    rules: &RuleSet,
    extra: Vec<Violation>,
    flags: &mut BTreeSet<String>,
    skipped: &mut Vec<String>,
) -> Result<RuleScore> {
    let (mut violations, missing) = apply_rules_lenient(doc, rules);
    violations.extend(extra);
    if !missing.is_empty() {
        flags.insert(flags::RULES_SKIPPED.to_string());
        skipped.extend(missing.iter().filter_map(|e| match e {
            Error::MissingAnnotation { rule_id, .. } => Some(rule_id.clone()),
            _ => None,
        }));
    }
    let score = rule_score_with_fallback(doc, &violations)?;
    if score.clause_fallback {
        flags.insert(flags::NO_CLAUSES.to_string());
    }
    Ok(score)
}

/// Computes all 23 features for one pair.
pub fn build_fingerprint(
    pair: &ProfilePair,
    providers: &Providers,
    config: &ProfileConfig,
) -> Result<Fingerprint> {
    if pair.source.is_empty() {
        return Err(Error::EmptySource);
    }
    let simp = &pair.simplification;
    if simp.is_empty() {
        return Ok(empty_fingerprint(pair));
    }
    let ctx = |e: Error| with_context(e, &pair.pair_id);
    let mut flag_set = BTreeSet::new();
    let mut skipped = Vec::new();

    let fid = fidelity(&pair.source, simp, providers.nli, providers.embed).map_err(ctx)?;
    if fid.evidence.hypothesis_truncated {
        flag_set.insert(flags::NLI_TRUNCATED.to_string());
    }
    let coh = coherence(simp, providers.embed).map_err(ctx)?;

    let sim = score_category(
        simp,
        &config.simplicity,
        Vec::new(),
        &mut flag_set,
        &mut skipped,
    )?;
    let remote = match providers.checker {
        Some(checker) => {
            let matches = checker
                .check(&simp.raw.content, &simp.raw.language)
                .map_err(ctx)?;
            checker_violations(simp, &matches, RuleCategory::Correctness)
        }
        None => Vec::new(),
    };
    let lng = score_category(
        simp,
        &config.correctness,
        remote,
        &mut flag_set,
        &mut skipped,
    )?;

    let inputs = fbr_inputs(simp)?;
    let fbr = fbr_raw(&inputs);
    let len = length_ratio(&pair.source.raw, &simp.raw)?;
    let ent = match entity_retention(&pair.source, simp) {
        Ok(v) => v,
        Err(Error::MissingAnnotation { .. }) => {
            log::warn!(
                "pair {}: no entity layer, entity retention set to 1",
                pair.pair_id
            );
            flag_set.insert(flags::NO_NER.to_string());
            1.0
        }
        Err(e) => return Err(e),
    };
    let asl = avg_sentence_length(simp)?;

    let mut f = Features::default();
    f.set("COR", fid.cor);
    f.set("COV", fid.cov);
    f.set("SIM", sim.s);
    f.set("LNG", lng.s);
    f.set("FBR_norm", fbr_normalized(fbr.raw, &config.readability));
    f.set("FBR_raw", fbr.raw);
    f.set("COH", coh);
    f.set("LEN", len);
    f.set("ENT", ent);
    f.set("ASL", asl);
    for (name, v) in ["S1", "S2", "S3", "S4", "W1", "W2"]
        .iter()
        .zip(fbr.components)
    {
        f.set(name, v);
    }
    f.set("K_S", fbr.k_s);
    f.set("K_W", fbr.k_w);
    f.set("SIM_Rw", sim.r_w);
    f.set("SIM_Rsc", sim.r_sc);
    f.set("LNG_Rw", lng.r_w);
    f.set("LNG_Rsc", lng.r_sc);
    f.set("word_count", simp.word_count() as f64);
    debug_assert!(f.all_finite(), "non-finite feature in {}", pair.pair_id);

    Ok(Fingerprint {
        pair_id: pair.pair_id.clone(),
        label: pair.label,
        features: f,
        length_stats: LengthStats::of(simp),
        flags: flag_set,
        evidence: FingerprintEvidence {
            simplicity: sim.violations,
            correctness: lng.violations,
            fidelity: fid.evidence,
            readability: Some(fbr),
            skipped_rules: skipped,
        },
    })
}

/// Per-feature mean and population standard deviation over a group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFingerprint {
    /// Display name of the group, e.g. a label or a strategy.
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<ConfigurationLabel>,
    pub n: usize,
    pub mean: Features,
    pub std: Features,
}

/// Aggregates the fingerprints of one configuration.
pub fn aggregate(
    fingerprints: &[Fingerprint],
    label: ConfigurationLabel,
) -> Result<ModelFingerprint> {
    let mut m = aggregate_named(fingerprints, label.to_string())?;
    m.label = Some(label);
    Ok(m)
}

/// Aggregates any group of fingerprints. Values are summed in sorted
/// order, so the result does not depend on input order.
pub fn aggregate_named(
    fingerprints: &[Fingerprint],
    name: impl Into<String>,
) -> Result<ModelFingerprint> {
    if fingerprints.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = fingerprints.len() as f64;
    let mut mean = Features::default();
    let mut std = Features::default();
    for i in 0..FEATURE_COUNT {
        let mut column: Vec<f64> = fingerprints.iter().map(|fp| fp.features.0[i]).collect();
        column.sort_by(f64::total_cmp);
        let m = column.iter().sum::<f64>() / n;
        let mut dev: Vec<f64> = column.iter().map(|x| (x - m) * (x - m)).collect();
        dev.sort_by(f64::total_cmp);
        let (lo, hi) = (column[0], column[column.len() - 1]);
        mean.0[i] = m.clamp(lo, hi);
        std.0[i] = (dev.iter().sum::<f64>() / n).sqrt();
    }
    Ok(ModelFingerprint {
        name: name.into(),
        label: None,
        n: fingerprints.len(),
        mean,
        std,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fidelity::mock::{HashingEmbedding, LexicalNli};
    use crate::text::HeuristicAnnotator;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn doc(text: &str) -> SegmentedText {
        segment(&RawText::new("t", text), &HeuristicAnnotator::new()).unwrap()
    }

    fn pair(src: &str, simp: &str) -> ProfilePair {
        ProfilePair::prepare(
            "p1",
            None,
            &RawText::new("s", src),
            &RawText::new("o", simp),
            &HeuristicAnnotator::new(),
        )
        .unwrap()
    }

    fn profile(p: &ProfilePair) -> Fingerprint {
        let nli = LexicalNli;
        let embed = HashingEmbedding::default();
        let providers = Providers {
            nli: &nli,
            embed: &embed,
            checker: None,
        };
        build_fingerprint(p, &providers, &ProfileConfig::default()).unwrap()
    }

    const SRC: &str = "Aachen liegt im Westen von Deutschland. Die Stadt wurde von den Römern gegründet, weil es dort heiße Quellen gibt.";

    #[test]
    fn heuristics() {
        let a = RawText::new("a", "x".repeat(200));
        let b = RawText::new("b", "y".repeat(50));
        assert_abs_diff_eq!(length_ratio(&a, &b).unwrap(), 0.25);
        assert_eq!(length_ratio(&a, &a).unwrap(), 1.0);
        assert!(matches!(
            length_ratio(&RawText::new("e", " "), &a),
            Err(Error::EmptySource)
        ));
        assert_eq!(avg_sentence_length(&doc("Hallo, Welt!")).unwrap(), 2.0);
        assert_eq!(
            avg_sentence_length(&doc(
                "Der Hund bellt laut. Die alte graue Katze schläft hier sehr lange."
            ))
            .unwrap(),
            6.0
        );
    }

    #[test]
    fn entity_retention_values() {
        let src = doc("Aachen liegt nahe am Rhein.");
        assert_eq!(
            entity_retention(&src, &doc("Aachen ist am Rhein.")).unwrap(),
            1.0
        );
        assert_eq!(
            entity_retention(&src, &doc("Aachen ist schön.")).unwrap(),
            0.5
        );
        assert_eq!(
            entity_retention(&doc("Der Hund bellt."), &doc("Hallo.")).unwrap(),
            1.0
        );
        assert_eq!(
            entity_retention(&src, &doc("Aachener Printen.")).unwrap(),
            0.0
        );
    }

    #[test]
    fn identity_simplification() {
        let fp = profile(&pair(SRC, SRC));
        assert_eq!(fp.features.get("LEN"), Some(1.0));
        assert_eq!(fp.features.get("ENT"), Some(1.0));
        assert!(fp.features.all_finite());
        assert!(fp.flags.is_empty());
        assert!(fp.features.get("COR").unwrap() > 90.0);
    }

    #[test]
    fn empty_output_is_flagged() {
        let fp = profile(&pair(SRC, "   "));
        for name in ["LEN", "COR", "COV", "SIM", "LNG"] {
            assert_eq!(fp.features.get(name), Some(0.0), "{name}");
        }
        assert!(fp.flags.contains(flags::EMPTY_OUTPUT));
        assert!(fp.features.all_finite());
    }

    #[test]
    fn deterministic_and_serializable() {
        let p = pair(
            SRC,
            "Aachen liegt im Westen. Die Römer haben die Stadt gebaut.",
        );
        let a = profile(&p);
        let b = profile(&p);
        assert_eq!(a, b);
        let json = serde_json::to_string(&a).unwrap();
        let back: Fingerprint = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert_eq!(a.to_feature_vector().len(), 23);
    }

    #[test]
    fn doubling_doubles_len() {
        let simp = "Aachen liegt im Westen.";
        let one = profile(&pair(SRC, simp)).features.get("LEN").unwrap();
        let two = profile(&pair(SRC, &format!("{simp} {simp}")))
            .features
            .get("LEN")
            .unwrap();
        assert_abs_diff_eq!(two, 2.0 * one, epsilon = 1e-12);
    }

    fn fp_with(values: [f64; FEATURE_COUNT]) -> Fingerprint {
        Fingerprint {
            pair_id: "x".into(),
            label: None,
            features: Features(values),
            length_stats: LengthStats::default(),
            flags: BTreeSet::new(),
            evidence: FingerprintEvidence::default(),
        }
    }

    #[test]
    fn aggregate_values() {
        let single = aggregate_named(&[fp_with([3.0; 23])], "g").unwrap();
        assert_eq!(single.mean.0, [3.0; 23]);
        assert_eq!(single.std.0, [0.0; 23]);
        let two = aggregate_named(&[fp_with([0.0; 23]), fp_with([1.0; 23])], "g").unwrap();
        assert_eq!(two.mean.0, [0.5; 23]);
        assert_eq!(two.std.0, [0.5; 23]);
        assert!(matches!(aggregate_named(&[], "g"), Err(Error::EmptyInput)));
    }

    proptest! {
        #[test]
        fn aggregate_is_permutation_invariant(
            rows in prop::collection::vec(prop::array::uniform23(-1e3f64..1e3), 1..12),
            seed in any::<u64>(),
        ) {
            let fps: Vec<Fingerprint> = rows.iter().map(|r| fp_with(*r)).collect();
            let mut shuffled = fps.clone();
            let n = shuffled.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (s >> 33) as usize % (i + 1));
            }
            let a = aggregate_named(&fps, "g").unwrap();
            let b = aggregate_named(&shuffled, "g").unwrap();
            prop_assert_eq!(&a, &b);
            for i in 0..FEATURE_COUNT {
                let lo = rows.iter().map(|r| r[i]).fold(f64::INFINITY, f64::min);
                let hi = rows.iter().map(|r| r[i]).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(a.mean.0[i] >= lo && a.mean.0[i] <= hi);
                prop_assert!(a.std.0[i] >= 0.0);
            }
        }
    }
}
