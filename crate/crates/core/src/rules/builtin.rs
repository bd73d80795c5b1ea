use std::collections::HashSet;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use super::{Matcher, Rule, RuleCategory, RuleLevel, RuleSet, RuleSpec};
use crate::error::{Error, Result};
use crate::text::lexicon as lx;
use crate::text::{Capability, ClauseKind, Pos, Sentence, SubClause};

const SEG: &[Capability] = &[Capability::Segmentation];
const POS: &[Capability] = &[Capability::Segmentation, Capability::Pos];
const MORPH: &[Capability] = &[Capability::Segmentation, Capability::Morphology];

fn spec(id: &str, category: RuleCategory, level: RuleLevel, description: &str) -> RuleSpec {
    RuleSpec {
        id: id.to_string(),
        category,
        level,
        kind: id.to_string(),
        description: description.to_string(),
        params: toml::Table::new(),
    }
}

fn with_param(mut spec: RuleSpec, key: &str, value: impl Into<toml::Value>) -> RuleSpec {
    spec.params.insert(key.to_string(), value.into());
    spec
}

/// The shipped rules of one category.
pub fn builtin_ruleset(category: RuleCategory) -> RuleSet {
    use RuleCategory::*;
    use RuleLevel::*;
    let specs = match category {
        Simplicity => vec![
            with_param(
                spec(
                    "sentence_length",
                    Simplicity,
                    Sentence,
                    "Sentence has more than the allowed number of words.",
                ),
                "max_words",
                20,
            ),
            with_param(
                with_param(
                    spec(
                        "long_word",
                        Simplicity,
                        Word,
                        "Word has too many syllables or characters.",
                    ),
                    "max_syllables",
                    3,
                ),
                "max_chars",
                16,
            ),
            spec(
                "abstract_words",
                Simplicity,
                Word,
                "Abstract noun formed with a nominal suffix.",
            ),
            spec("negation", Simplicity, Word, "Negation word."),
            spec("passive", Simplicity, Clause, "Clause in passive voice."),
            spec(
                "subordinate_clause",
                Simplicity,
                Clause,
                "Subordinate clause.",
            ),
            spec("relative_clause", Simplicity, Clause, "Relative clause."),
            spec("genitive", Simplicity, Word, "Word in genitive case."),
            spec(
                "subjunctive",
                Simplicity,
                Clause,
                "Clause with a verb in subjunctive mood.",
            ),
        ],
        Correctness => vec![
            spec(
                "typo",
                Correctness,
                Word,
                "Unknown word one edit away from a dictionary word.",
            ),
            spec(
                "duplicate_word",
                Correctness,
                Word,
                "Word repeated immediately.",
            ),
            spec(
                "capitalization",
                Correctness,
                Word,
                "Sentence starts with a lowercase letter.",
            ),
        ],
    };
    let rules = specs
        .into_iter()
        .map(|s| Rule::from_spec(s, None).expect("built-in rules are valid"))
        .collect();
    RuleSet::new(category.to_string(), "1", rules).expect("built-in rule set is valid")
}

fn param_usize(spec: &RuleSpec, key: &str, default: usize) -> Result<usize> {
    match spec.params.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_integer()
            .and_then(|i| usize::try_from(i).ok())
            .ok_or_else(|| {
                Error::InvalidRuleSet(format!(
                    "rule `{}`: `{key}` must be a non-negative integer",
                    spec.id
                ))
            }),
    }
}

/// Word list from the `words` array and the newline-separated `path` file.
fn param_words(spec: &RuleSpec, base_dir: Option<&Path>) -> Result<Option<Vec<String>>> {
    let mut out: Option<Vec<String>> = None;
    if let Some(v) = spec.params.get("words") {
        let arr = v.as_array().ok_or_else(|| {
            Error::InvalidRuleSet(format!("rule `{}`: `words` must be an array", spec.id))
        })?;
        let words = arr
            .iter()
            .map(|w| w.as_str().map(str::to_lowercase))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::InvalidRuleSet(format!("rule `{}`: `words` must hold strings", spec.id))
            })?;
        out.get_or_insert_with(Vec::new).extend(words);
    }
    if let Some(v) = spec.params.get("path") {
        let rel = v.as_str().ok_or_else(|| {
            Error::InvalidRuleSet(format!("rule `{}`: `path` must be a string", spec.id))
        })?;
        let path = match base_dir {
            Some(dir) if Path::new(rel).is_relative() => dir.join(rel),
            _ => Path::new(rel).to_path_buf(),
        };
        let text = std::fs::read_to_string(&path)?;
        out.get_or_insert_with(Vec::new).extend(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase),
        );
    }
    Ok(out)
}

/// Builds the matcher named by `spec.kind`.
pub fn matcher_for(spec: &RuleSpec, base_dir: Option<&Path>) -> Result<Arc<dyn Matcher>> {
    let words = param_words(spec, base_dir)?;
    let m: Arc<dyn Matcher> = match spec.kind.as_str() {
        "sentence_length" => Arc::new(SentenceLength {
            max_words: param_usize(spec, "max_words", 20)?,
        }),
        "long_word" => Arc::new(LongWord {
            max_syllables: param_usize(spec, "max_syllables", 3)? as u32,
            max_chars: param_usize(spec, "max_chars", 16)?,
        }),
        "negation" => {
            Arc::new(Lexicon::new(words.unwrap_or_else(|| {
                lx::NEGATIONS.iter().map(|s| s.to_string()).collect()
            })))
        }
        "lexicon" => Arc::new(Lexicon::new(words.ok_or_else(|| {
            Error::InvalidRuleSet(format!(
                "rule `{}`: lexicon rules need `words` or `path`",
                spec.id
            ))
        })?)),
        "abstract_words" => Arc::new(AbstractWords {
            min_chars: param_usize(spec, "min_chars", 6)?,
        }),
        "passive" => Arc::new(Feature {
            key: "Voice",
            value: "Pass",
            finite_only: false,
        }),
        "subjunctive" => Arc::new(Feature {
            key: "Mood",
            value: "Sub",
            finite_only: true,
        }),
        "genitive" => Arc::new(Feature {
            key: "Case",
            value: "Gen",
            finite_only: false,
        }),
        "subordinate_clause" => Arc::new(ClauseOfKind(ClauseKind::Subordinate, POS)),
        "relative_clause" => Arc::new(ClauseOfKind(ClauseKind::Relative, MORPH)),
        "typo" => Arc::new(Typo {
            extra: words.unwrap_or_default().into_iter().collect(),
            min_chars: param_usize(spec, "min_chars", 4)?,
        }),
        "duplicate_word" => Arc::new(DuplicateWord),
        "capitalization" => Arc::new(Capitalization),
        other => {
            return Err(Error::InvalidRuleSet(format!(
                "rule `{}`: unknown kind `{other}`",
                spec.id
            )))
        }
    };
    Ok(m)
}

struct SentenceLength {
    max_words: usize,
}

impl Matcher for SentenceLength {
    fn requires(&self) -> &[Capability] {
        SEG
    }

    fn find(&self, sentence: &Sentence, _: &[SubClause]) -> Vec<Vec<usize>> {
        if sentence.word_count() > self.max_words {
            vec![(0..sentence.tokens.len()).collect()]
        } else {
            Vec::new()
        }
    }
}

struct LongWord {
    max_syllables: u32,
    max_chars: usize,
}

impl Matcher for LongWord {
    fn requires(&self) -> &[Capability] {
        SEG
    }

    fn find(&self, sentence: &Sentence, _: &[SubClause]) -> Vec<Vec<usize>> {
        sentence
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                t.is_word
                    && (t.syllable_count > self.max_syllables
                        || t.text.chars().count() > self.max_chars)
            })
            .map(|(i, _)| vec![i])
            .collect()
    }
}

struct Lexicon {
    words: HashSet<String>,
}

impl Lexicon {
    fn new(words: Vec<String>) -> Self {
        Lexicon {
            words: words.into_iter().map(|w| w.to_lowercase()).collect(),
        }
    }
}

impl Matcher for Lexicon {
    fn requires(&self) -> &[Capability] {
        SEG
    }

    fn find(&self, sentence: &Sentence, _: &[SubClause]) -> Vec<Vec<usize>> {
        sentence
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_word && self.words.contains(&t.text.to_lowercase()))
            .map(|(i, _)| vec![i])
            .collect()
    }
}

struct AbstractWords {
    min_chars: usize,
}

impl Matcher for AbstractWords {
    fn requires(&self) -> &[Capability] {
        SEG
    }

    fn find(&self, sentence: &Sentence, _: &[SubClause]) -> Vec<Vec<usize>> {
        sentence
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                let capital = t.text.chars().next().is_some_and(char::is_uppercase);
                let lower = t.text.to_lowercase();
                t.is_word
                    && capital
                    && t.pos != Pos::Propn
                    && lower.chars().count() >= self.min_chars
                    && lx::ABSTRACT_SUFFIXES.iter().any(|s| lower.ends_with(s))
            })
            .map(|(i, _)| vec![i])
            .collect()
    }
}

struct Feature {
    key: &'static str,
    value: &'static str,
    finite_only: bool,
}

impl Matcher for Feature {
    fn requires(&self) -> &[Capability] {
        MORPH
    }

    fn find(&self, sentence: &Sentence, _: &[SubClause]) -> Vec<Vec<usize>> {
        sentence
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                t.feature(self.key) == Some(self.value) && (!self.finite_only || t.is_finite_verb())
            })
            .map(|(i, _)| vec![i])
            .collect()
    }
}

struct ClauseOfKind(ClauseKind, &'static [Capability]);

impl Matcher for ClauseOfKind {
    fn requires(&self) -> &[Capability] {
        self.1
    }

    fn find(&self, _: &Sentence, clauses: &[SubClause]) -> Vec<Vec<usize>> {
        clauses
            .iter()
            .filter(|c| c.kind == self.0)
            .map(|c| c.range().collect())
            .collect()
    }
}

fn dictionary() -> &'static HashSet<String> {
    static DICT: OnceLock<HashSet<String>> = OnceLock::new();
    DICT.get_or_init(|| {
        let lists: &[&[&str]] = &[
            lx::COMMON_WORDS,
            lx::DETERMINERS,
            lx::GENITIVE_DETERMINERS,
            lx::PRONOUNS,
            lx::RELATIVE_PRONOUNS,
            lx::ADPOSITIONS,
            lx::COORDINATING_CONJUNCTIONS,
            lx::SUBORDINATING_CONJUNCTIONS,
            lx::PARTICLES,
            lx::ADVERBS,
            lx::ADJECTIVES,
            lx::AUXILIARIES,
            lx::WERDEN_FORMS,
            lx::SUBJUNCTIVE_FORMS,
            lx::IRREGULAR_FINITE,
            lx::NEGATIONS,
            lx::MONTHS,
        ];
        lists
            .iter()
            .flat_map(|l| l.iter())
            .map(|w| w.to_lowercase())
            .collect()
    })
}

const INFLECTIONS: &[&str] = &[
    "e", "en", "n", "s", "es", "er", "em", "ern", "t", "st", "et", "te", "ten",
];

/// Whether `word` is a dictionary word or a regular inflection of one.
pub fn known_word(word: &str, extra: &HashSet<String>) -> bool {
    let lower = word.to_lowercase();
    let dict = dictionary();
    if dict.contains(&lower) || extra.contains(&lower) {
        return true;
    }
    INFLECTIONS.iter().any(|suffix| {
        lower.strip_suffix(suffix).is_some_and(|stem| {
            stem.chars().count() >= 3 && (dict.contains(stem) || extra.contains(stem))
        })
    })
}

/// Single-edit neighbours of `word` that keep its last character:
/// substitutions, adjacent transpositions, interior insertions and
/// deletions. Edits at the end would collide with inflection.
fn near_known(word: &str, extra: &HashSet<String>) -> bool {
    let chars: Vec<char> = word.to_lowercase().chars().collect();
    let n = chars.len();
    let dict = dictionary();
    let hit = |cand: &[char]| {
        let s: String = cand.iter().collect();
        s.chars().count() >= 4 && (dict.contains(&s) || extra.contains(&s))
    };
    let alphabet = "abcdefghijklmnopqrstuvwxyzäöüß";
    let mut buf = chars.clone();
    for i in 0..n.saturating_sub(1) {
        buf.swap(i, i + 1);
        if buf != chars && hit(&buf) {
            return true;
        }
        buf.swap(i, i + 1);
    }
    for i in 0..n {
        let orig = buf[i];
        for c in alphabet.chars() {
            if c == orig {
                continue;
            }
            buf[i] = c;
            if hit(&buf) {
                return true;
            }
        }
        buf[i] = orig;
    }
    for i in 1..n.saturating_sub(1) {
        let mut del = chars.clone();
        del.remove(i);
        if hit(&del) {
            return true;
        }
    }
    for i in 1..n {
        for c in alphabet.chars() {
            let mut ins = chars.clone();
            ins.insert(i, c);
            if hit(&ins) {
                return true;
            }
        }
    }
    false
}

struct Typo {
    extra: HashSet<String>,
    min_chars: usize,
}

impl Matcher for Typo {
    fn requires(&self) -> &[Capability] {
        SEG
    }

    fn find(&self, sentence: &Sentence, _: &[SubClause]) -> Vec<Vec<usize>> {
        sentence
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                t.is_word
                    && t.text.chars().count() >= self.min_chars
                    && t.text.chars().all(char::is_alphabetic)
                    && !known_word(&t.text, &self.extra)
                    && near_known(&t.text, &self.extra)
            })
            .map(|(i, _)| vec![i])
            .collect()
    }
}

struct DuplicateWord;

impl Matcher for DuplicateWord {
    fn requires(&self) -> &[Capability] {
        SEG
    }

    fn find(&self, sentence: &Sentence, _: &[SubClause]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut prev: Option<String> = None;
        for (i, t) in sentence.tokens.iter().enumerate() {
            if !t.is_word {
                prev = None;
                continue;
            }
            let lower = t.text.to_lowercase();
            if prev.as_deref() == Some(lower.as_str()) && !lower.chars().all(|c| c.is_ascii_digit())
            {
                out.push(vec![i]);
            }
            prev = Some(lower);
        }
        out
    }
}

struct Capitalization;

impl Matcher for Capitalization {
    fn requires(&self) -> &[Capability] {
        SEG
    }

    fn find(&self, sentence: &Sentence, _: &[SubClause]) -> Vec<Vec<usize>> {
        sentence
            .tokens
            .iter()
            .position(|t| t.is_word)
            .filter(|&i| {
                sentence.tokens[i]
                    .text
                    .chars()
                    .next()
                    .is_some_and(char::is_lowercase)
            })
            .map(|i| vec![vec![i]])
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::apply_rules;
    use crate::text::{segment, HeuristicAnnotator, RawText, SegmentedText};

    fn doc(text: &str) -> SegmentedText {
        segment(&RawText::new("t", text), &HeuristicAnnotator::new()).unwrap()
    }

    fn ids(text: &str, category: RuleCategory) -> Vec<String> {
        apply_rules(&doc(text), &builtin_ruleset(category))
            .unwrap()
            .into_iter()
            .map(|v| v.rule_id)
            .collect()
    }

    #[test]
    fn simplicity_set_contains_required_rules() {
        let set = builtin_ruleset(RuleCategory::Simplicity);
        for id in [
            "sentence_length",
            "long_word",
            "negation",
            "passive",
            "subordinate_clause",
            "relative_clause",
            "genitive",
            "subjunctive",
        ] {
            assert!(set.get(id).is_some(), "{id}");
        }
        let correctness = builtin_ruleset(RuleCategory::Correctness);
        for id in ["typo", "duplicate_word", "capitalization"] {
            assert!(correctness.get(id).is_some(), "{id}");
        }
        assert!(set.merged(&correctness).is_ok());
    }

    #[test]
    fn simplicity_rules_fire() {
        use RuleCategory::Simplicity as S;
        assert_eq!(
            ids("Das ist eine Informationsveranstaltung.", S),
            vec!["long_word", "abstract_words"]
        );
        assert_eq!(
            ids("Er bleibt zu Hause, weil er krank ist.", S),
            vec!["subordinate_clause"]
        );
        assert_eq!(
            ids("Der Mann, der dort steht, ist alt.", S),
            vec!["relative_clause"]
        );
        assert_eq!(
            ids("Das Dach des Hauses ist rot.", S),
            vec!["genitive", "genitive"]
        );
        assert_eq!(ids("Er wäre gern hier.", S), vec!["subjunctive"]);
    }

    #[test]
    fn correctness_rules_fire() {
        use RuleCategory::Correctness as C;
        assert_eq!(ids("Der Hund bellt laut.", C), Vec::<String>::new());
        assert_eq!(ids("Der Hnud bellt laut.", C), vec!["typo"]);
        assert_eq!(ids("Die Kuh muht.", C), Vec::<String>::new());
        assert_eq!(ids("Die Stadt leigt am Fluss.", C), vec!["typo"]);
        assert_eq!(ids("Der Hund bellt bellt.", C), vec!["duplicate_word"]);
        assert_eq!(ids("der Hund bellt.", C), vec!["capitalization"]);
    }

    #[test]
    fn inflected_words_are_known() {
        let none = HashSet::new();
        assert!(known_word("Häuser", &none) || !near_known("Häuser", &none));
        assert!(known_word("Städte", &none) || !near_known("Städte", &none));
        assert!(known_word("liegt", &none));
    }

    #[test]
    fn lexicon_rule_from_toml() {
        let text = r#"
name = "custom"
[[rules]]
id = "technical_terms"
category = "simplicity"
level = "word"
kind = "lexicon"
[rules.params]
words = ["Algorithmus", "Protokoll"]
"#;
        let set = RuleSet::from_toml_str(text, None).unwrap();
        let v = apply_rules(&doc("Der Algorithmus nutzt ein Protokoll."), &set).unwrap();
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn unknown_kind_rejected() {
        let text = "name = \"x\"\n[[rules]]\nid = \"a\"\ncategory = \"simplicity\"\nlevel = \"word\"\nkind = \"nope\"\n";
        assert!(RuleSet::from_toml_str(text, None).is_err());
    }
}
