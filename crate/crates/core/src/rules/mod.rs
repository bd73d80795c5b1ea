//! Declarative simplicity and correctness rules over annotated text, and the
//! squared-harmonic-mean score of non-violating words and sub-clauses.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{Capability, SegmentedText, Sentence, Span, SubClause};

mod builtin;
pub mod checker;

pub use builtin::{builtin_ruleset, known_word, matcher_for};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleCategory {
    Simplicity,
    Correctness,
}

impl fmt::Display for RuleCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleCategory::Simplicity => "simplicity",
            RuleCategory::Correctness => "correctness",
        })
    }
}

impl FromStr for RuleCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplicity" => Ok(RuleCategory::Simplicity),
            "correctness" => Ok(RuleCategory::Correctness),
            other => Err(Error::InvalidRuleSet(format!("unknown category `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleLevel {
    Word,
    Clause,
    Sentence,
}

/// Finds rule hits in one sentence.
///
/// Each hit is a group of sentence-local token indices. The engine widens
/// a group according to the rule's level.
pub trait Matcher: Send + Sync {
    fn requires(&self) -> &[Capability];

    fn find(&self, sentence: &Sentence, clauses: &[SubClause]) -> Vec<Vec<usize>>;
}

/// Serializable description of a rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleSpec {
    pub id: String,
    pub category: RuleCategory,
    pub level: RuleLevel,
    /// Matcher implementation, e.g. `sentence_length` or `lexicon`.
    pub kind: String,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "toml::Table::is_empty")]
    pub params: toml::Table,
}

#[derive(Clone)]
pub struct Rule {
    pub spec: RuleSpec,
    matcher: Arc<dyn Matcher>,
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rule")
            .field("spec", &self.spec)
            .finish_non_exhaustive()
    }
}

impl Rule {
    pub fn new(spec: RuleSpec, matcher: Arc<dyn Matcher>) -> Self {
        Rule { spec, matcher }
    }

    /// Builds the matcher named by `spec.kind`. Relative lexicon paths are
    /// resolved against `base_dir`.
    pub fn from_spec(spec: RuleSpec, base_dir: Option<&Path>) -> Result<Self> {
        let matcher = matcher_for(&spec, base_dir)?;
        Ok(Rule { spec, matcher })
    }

    pub fn id(&self) -> &str {
        &self.spec.id
    }

    pub fn requires(&self) -> &[Capability] {
        self.matcher.requires()
    }

    pub fn missing_capability(&self, doc: &SegmentedText) -> Option<Capability> {
        self.requires().iter().copied().find(|c| !doc.has(*c))
    }
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    pub name: String,
    pub version: String,
    pub rules: Vec<Rule>,
}

#[derive(Serialize, Deserialize)]
struct RuleSetFile {
    name: String,
    #[serde(default = "default_version")]
    version: String,
    rules: Vec<RuleSpec>,
}

fn default_version() -> String {
    "1".to_string()
}

impl RuleSet {
    pub fn new(
        name: impl Into<String>,
        version: impl Into<String>,
        rules: Vec<Rule>,
    ) -> Result<Self> {
        let set = RuleSet {
            name: name.into(),
            version: version.into(),
            rules,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rules.is_empty() {
            return Err(Error::InvalidRuleSet(format!(
                "rule set `{}` is empty",
                self.name
            )));
        }
        let mut seen = BTreeSet::new();
        for rule in &self.rules {
            if !seen.insert(rule.id()) {
                return Err(Error::InvalidRuleSet(format!(
                    "duplicate rule id `{}`",
                    rule.id()
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id() == id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.rules.iter().map(Rule::id).collect()
    }

    /// Rules of one category, keeping name and version.
    pub fn of_category(&self, category: RuleCategory) -> Vec<&Rule> {
        self.rules
            .iter()
            .filter(|r| r.spec.category == category)
            .collect()
    }

    /// Concatenates two rule sets; ids must stay unique.
    pub fn merged(&self, other: &RuleSet) -> Result<RuleSet> {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        RuleSet::new(
            format!("{}+{}", self.name, other.name),
            self.version.clone(),
            rules,
        )
    }

    pub fn to_toml(&self) -> String {
        let file = RuleSetFile {
            name: self.name.clone(),
            version: self.version.clone(),
            rules: self.rules.iter().map(|r| r.spec.clone()).collect(),
        };
        toml::to_string(&file).expect("rule specs serialize")
    }

    pub fn from_toml_str(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let file: RuleSetFile =
            toml::from_str(text).map_err(|e| Error::InvalidRuleSet(e.to_string()))?;
        let rules = file
            .rules
            .into_iter()
            .map(|spec| Rule::from_spec(spec, base_dir))
            .collect::<Result<Vec<_>>>()?;
        RuleSet::new(file.name, file.version, rules)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        RuleSet::from_toml_str(&text, path.parent())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule_id: String,
    pub category: RuleCategory,
    pub sentence_index: usize,
    /// Byte span in the document covering the violating tokens.
    pub span: Span,
    /// Sentence-local indices of the violating tokens.
    pub token_indices: Vec<usize>,
    /// Indices into the sentence's sub-clause list.
    pub subclause_indices: Vec<usize>,
}

/// Word and sub-clause ratios and their squared harmonic mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleScore {
    pub r_w: f64,
    pub r_sc: f64,
    pub s: f64,
    pub violations: Vec<Violation>,
    /// Set when the document had no sub-clauses and `r_sc` was computed
    /// over sentences instead.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub clause_fallback: bool,
}

/// Squared harmonic mean; 0 when either ratio is 0.
pub fn squared_harmonic_mean(r_w: f64, r_sc: f64) -> f64 {
    if r_w <= 0.0 || r_sc <= 0.0 {
        return 0.0;
    }
    let h = 2.0 / (1.0 / r_w + 1.0 / r_sc);
    h * h
}

/// Applies every rule; fails on the first rule whose annotation layer is
/// missing.
pub fn apply_rules(doc: &SegmentedText, rules: &RuleSet) -> Result<Vec<Violation>> {
    for rule in &rules.rules {
        if let Some(capability) = rule.missing_capability(doc) {
            return Err(Error::MissingAnnotation {
                rule_id: rule.id().to_string(),
                capability,
            });
        }
    }
    Ok(rules
        .rules
        .iter()
        .flat_map(|r| apply_rule(doc, r))
        .collect())
}

/// Applies the rules whose annotation layers are present and reports the
/// skipped ones.
pub fn apply_rules_lenient(doc: &SegmentedText, rules: &RuleSet) -> (Vec<Violation>, Vec<Error>) {
    let mut violations = Vec::new();
    let mut skipped = Vec::new();
    for rule in &rules.rules {
        if let Some(capability) = rule.missing_capability(doc) {
            let err = Error::MissingAnnotation {
                rule_id: rule.id().to_string(),
                capability,
            };
            log::warn!("skipping rule: {err}");
            skipped.push(err);
            continue;
        }
        violations.extend(apply_rule(doc, rule));
    }
    (violations, skipped)
}

pub fn apply_rule(doc: &SegmentedText, rule: &Rule) -> Vec<Violation> {
    let mut out = Vec::new();
    for (si, sentence) in doc.sentences.iter().enumerate() {
        let clauses = doc.sub_clauses.get(si).map(Vec::as_slice).unwrap_or(&[]);
        let groups: Vec<Vec<usize>> = rule
            .matcher
            .find(sentence, clauses)
            .into_iter()
            .map(|g| {
                g.into_iter()
                    .filter(|&i| i < sentence.tokens.len())
                    .collect::<Vec<_>>()
            })
            .filter(|g| !g.is_empty())
            .collect();
        if groups.is_empty() {
            continue;
        }
        let make = |tokens: Vec<usize>, subclauses: Vec<usize>| {
            let span = tokens
                .iter()
                .map(|&i| sentence.tokens[i].span)
                .reduce(Span::cover)
                .unwrap_or(sentence.span);
            Violation {
                rule_id: rule.spec.id.clone(),
                category: rule.spec.category,
                sentence_index: si,
                span,
                token_indices: tokens,
                subclause_indices: subclauses,
            }
        };
        let clauses_of = |tokens: &[usize]| -> Vec<usize> {
            clauses
                .iter()
                .enumerate()
                .filter(|(_, c)| tokens.iter().any(|&t| c.contains(t)))
                .map(|(k, _)| k)
                .collect()
        };
        match rule.spec.level {
            RuleLevel::Sentence => {
                out.push(make(
                    (0..sentence.tokens.len()).collect(),
                    (0..clauses.len()).collect(),
                ));
            }
            RuleLevel::Clause => {
                let mut hit = BTreeSet::new();
                for group in &groups {
                    let owners = clauses_of(group);
                    if owners.is_empty() {
                        let mut tokens = group.clone();
                        tokens.sort_unstable();
                        tokens.dedup();
                        out.push(make(tokens, Vec::new()));
                    }
                    hit.extend(owners);
                }
                for k in hit {
                    out.push(make(clauses[k].range().collect(), vec![k]));
                }
            }
            RuleLevel::Word => {
                for group in groups {
                    let mut tokens: Vec<usize> = group
                        .into_iter()
                        .filter(|&i| sentence.tokens[i].is_word)
                        .collect();
                    tokens.sort_unstable();
                    tokens.dedup();
                    if tokens.is_empty() {
                        continue;
                    }
                    let owners = clauses_of(&tokens);
                    out.push(make(tokens, owners));
                }
            }
        }
    }
    out
}

/// Scores a document against violations of a single category.
///
/// Errors with `EmptyDocument` when the document has no word tokens or no
/// sub-clauses.
pub fn rule_score(doc: &SegmentedText, violations: &[Violation]) -> Result<RuleScore> {
    if doc.clause_count() == 0 {
        return Err(Error::EmptyDocument);
    }
    rule_score_with_fallback(doc, violations)
}

/// Like [`rule_score`], but a document with words and no sub-clauses gets
/// `r_sc` over sentences: the share of sentences without any violation.
pub fn rule_score_with_fallback(
    doc: &SegmentedText,
    violations: &[Violation],
) -> Result<RuleScore> {
    let words = doc.word_count();
    if words == 0 {
        return Err(Error::EmptyDocument);
    }
    let mut bad_tokens = BTreeSet::new();
    let mut bad_clauses = BTreeSet::new();
    let mut bad_sentences = BTreeSet::new();
    for v in violations {
        let Some(sentence) = doc.sentences.get(v.sentence_index) else {
            continue;
        };
        bad_sentences.insert(v.sentence_index);
        for &t in &v.token_indices {
            if sentence.tokens.get(t).is_some_and(|tok| tok.is_word) {
                bad_tokens.insert((v.sentence_index, t));
            }
        }
        for &c in &v.subclause_indices {
            bad_clauses.insert((v.sentence_index, c));
        }
    }
    let r_w = (words - bad_tokens.len()) as f64 / words as f64;
    let clauses = doc.clause_count();
    let (r_sc, clause_fallback) = if clauses > 0 {
        ((clauses - bad_clauses.len()) as f64 / clauses as f64, false)
    } else {
        let n = doc.sentences.iter().filter(|s| s.word_count() > 0).count();
        let bad = bad_sentences
            .iter()
            .filter(|&&i| doc.sentences[i].word_count() > 0)
            .count();
        ((n - bad) as f64 / n as f64, true)
    };
    Ok(RuleScore {
        r_w,
        r_sc,
        s: squared_harmonic_mean(r_w, r_sc),
        violations: violations.to_vec(),
        clause_fallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{segment, HeuristicAnnotator, RawText};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn doc(text: &str) -> SegmentedText {
        segment(&RawText::new("t", text), &HeuristicAnnotator::new()).unwrap()
    }

    #[test]
    fn harmonic_mean_values() {
        assert_eq!(squared_harmonic_mean(1.0, 1.0), 1.0);
        assert_abs_diff_eq!(squared_harmonic_mean(0.5, 1.0), 4.0 / 9.0, epsilon = 1e-12);
        assert_eq!(squared_harmonic_mean(0.0, 1.0), 0.0);
        assert_eq!(squared_harmonic_mean(0.7, 0.0), 0.0);
    }

    #[test]
    fn long_sentence_poisons_everything() {
        let text = "Der alte Mann ging gestern mit seinem Hund und seiner Frau durch den großen Park und sah dort viele Kinder und Enten am See.";
        let d = doc(text);
        assert!(d.sentences[0].word_count() > 20);
        let set = builtin_ruleset(RuleCategory::Simplicity);
        let only =
            RuleSet::new("x", "1", vec![set.get("sentence_length").unwrap().clone()]).unwrap();
        let v = apply_rules(&d, &only).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].token_indices.len(), d.sentences[0].tokens.len());
        let score = rule_score(&d, &v).unwrap();
        assert_eq!(score.r_w, 0.0);
        assert_eq!(score.r_sc, 0.0);
        assert_eq!(score.s, 0.0);
    }

    #[test]
    fn passive_is_one_clause_violation() {
        let d = doc("Der Ball wird geworfen.");
        let set = builtin_ruleset(RuleCategory::Simplicity);
        let v: Vec<_> = apply_rules(&d, &set)
            .unwrap()
            .into_iter()
            .filter(|v| v.rule_id == "passive")
            .collect();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].subclause_indices, vec![0]);
    }

    #[test]
    fn compliant_sentence_has_no_violations() {
        let d = doc("Der Hund bellt.");
        assert!(apply_rules(&d, &builtin_ruleset(RuleCategory::Simplicity))
            .unwrap()
            .is_empty());
        assert!(apply_rules(&d, &builtin_ruleset(RuleCategory::Correctness))
            .unwrap()
            .is_empty());
        let s = rule_score(&d, &[]).unwrap();
        assert_eq!((s.r_w, s.r_sc, s.s), (1.0, 1.0, 1.0));
    }

    #[test]
    fn word_violation_marks_its_clause() {
        let d = doc("Der Hund bellt nicht. Die Katze schläft.");
        let set = builtin_ruleset(RuleCategory::Simplicity);
        let v: Vec<_> = apply_rules(&d, &set).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule_id, "negation");
        let s = rule_score(&d, &v).unwrap();
        assert_abs_diff_eq!(s.r_w, 6.0 / 7.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.r_sc, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn missing_layer_is_reported() {
        let mut d = doc("Der Ball wird geworfen.");
        d.capabilities.remove(&Capability::Morphology);
        let set = builtin_ruleset(RuleCategory::Simplicity);
        assert!(matches!(
            apply_rules(&d, &set),
            Err(Error::MissingAnnotation { .. })
        ));
        let (v, skipped) = apply_rules_lenient(&d, &set);
        assert!(v.iter().all(|v| v.rule_id != "passive"));
        assert!(!skipped.is_empty());
    }

    #[test]
    fn verbless_document_falls_back_to_sentences() {
        let d = doc("Ein großer Hund. Keine Katze.");
        assert!(matches!(rule_score(&d, &[]), Err(Error::EmptyDocument)));
        let set = builtin_ruleset(RuleCategory::Simplicity);
        let v = apply_rules(&d, &set).unwrap();
        let s = rule_score_with_fallback(&d, &v).unwrap();
        assert!(s.clause_fallback);
        assert_abs_diff_eq!(s.r_sc, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn toml_round_trip() {
        let set = builtin_ruleset(RuleCategory::Simplicity);
        let text = set.to_toml();
        let back = RuleSet::from_toml_str(&text, None).unwrap();
        assert_eq!(back.ids(), set.ids());
        assert_eq!(back.to_toml(), text);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let set = builtin_ruleset(RuleCategory::Simplicity);
        let r = set.rules[0].clone();
        assert!(RuleSet::new("x", "1", vec![r.clone(), r]).is_err());
        assert!(RuleSet::new("x", "1", vec![]).is_err());
    }

    proptest! {
        #[test]
        fn harmonic_forms_agree(a in 1e-6f64..=1.0, b in 1e-6f64..=1.0) {
            let s = squared_harmonic_mean(a, b);
            let alt = (2.0 * a * b / (a + b)).powi(2);
            prop_assert!((s - alt).abs() <= 1e-12);
            prop_assert!((0.0..=1.0).contains(&s));
        }
    }
}
