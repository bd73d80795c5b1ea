//! Rule-based German annotator.
//!
//! Provides sentence segmentation, coarse POS tags, a handful of
//! morphological features (finiteness, voice, mood, genitive case,
//! relative pronouns) and gazetteer-based entities. It is deterministic and
//! dependency-free, which makes it the default provider for hermetic runs.
//! It does not produce dependency arcs.

use std::collections::BTreeMap;

use super::lexicon as lx;
use super::{
    AnnotatedEntity, AnnotatedToken, Annotation, AnnotationProvider, Capabilities, Capability,
    Morph, Pos, RawText, Span,
};
use crate::error::Result;

const CLOSING: &[&str] = &["\"", "“", "”", "»", "«", "'", "’", ")", "]", "}"];
const OPENING: &[&str] = &["\"", "„", "“", "»", "«", "(", "[", "{", "'", "‚"];

#[derive(Debug, Clone)]
pub struct HeuristicAnnotator {
    id: String,
    gazetteer: Vec<(Vec<String>, String)>,
}

impl Default for HeuristicAnnotator {
    fn default() -> Self {
        Self::new()
    }
}

impl HeuristicAnnotator {
    pub fn new() -> Self {
        let mut annotator = HeuristicAnnotator {
            id: "heuristic-de".to_string(),
            gazetteer: Vec::new(),
        };
        annotator.extend_gazetteer(
            lx::GAZETTEER
                .iter()
                .map(|(n, k)| (n.to_string(), k.to_string())),
        );
        annotator
    }

    /// Adds `(surface form, entity kind)` entries. Longer names win.
    pub fn extend_gazetteer(&mut self, entries: impl IntoIterator<Item = (String, String)>) {
        for (name, kind) in entries {
            let parts: Vec<String> = name.split_whitespace().map(str::to_string).collect();
            if !parts.is_empty() {
                self.gazetteer.push((parts, kind));
            }
        }
        self.gazetteer
            .sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
    }
}

impl AnnotationProvider for HeuristicAnnotator {
    fn id(&self) -> &str {
        &self.id
    }

    fn capabilities(&self) -> Capabilities {
        [
            Capability::Segmentation,
            Capability::Pos,
            Capability::Morphology,
            Capability::Ner,
        ]
        .into_iter()
        .collect()
    }

    fn annotate(&self, raw: &RawText) -> Result<Annotation> {
        let content = raw.content.as_str();
        let spans = tokenize(content);
        let sentence_ranges = split_sentences(content, &spans);

        let mut annotation = Annotation::default();
        for range in sentence_ranges {
            let sentence_spans = &spans[range.clone()];
            let first = sentence_spans[0];
            let last = sentence_spans[sentence_spans.len() - 1];
            annotation.sentences.push(Span::new(first.start, last.end));

            let texts: Vec<&str> = sentence_spans
                .iter()
                .map(|s| &content[s.start..s.end])
                .collect();
            let tags = tag_sentence(&texts);
            let offset = annotation.tokens.len();
            for (k, (span, (pos, morph))) in sentence_spans.iter().zip(tags).enumerate() {
                annotation.tokens.push(AnnotatedToken {
                    span: *span,
                    pos,
                    morph,
                    head: Some(offset + k),
                });
            }
            let tagged = &annotation.tokens[offset..];
            annotation
                .entities
                .extend(self.find_entities(&texts, tagged));
        }
        Ok(annotation)
    }
}

impl HeuristicAnnotator {
    fn find_entities(&self, texts: &[&str], tokens: &[AnnotatedToken]) -> Vec<AnnotatedEntity> {
        let mut out = Vec::new();
        let mut i = 0;
        'outer: while i < texts.len() {
            for (parts, kind) in &self.gazetteer {
                let n = parts.len();
                if i + n <= texts.len() && parts.iter().zip(&texts[i..i + n]).all(|(p, t)| p == t) {
                    out.push(AnnotatedEntity {
                        span: Span::new(tokens[i].span.start, tokens[i + n - 1].span.end),
                        kind: kind.clone(),
                    });
                    i += n;
                    continue 'outer;
                }
            }
            let t = texts[i];
            let acronym = t.chars().count() >= 2
                && t.chars().all(|c| c.is_uppercase() || c.is_ascii_digit())
                && t.chars().any(char::is_alphabetic);
            if acronym {
                out.push(AnnotatedEntity {
                    span: tokens[i].span,
                    kind: "ORG".to_string(),
                });
            } else if tokens[i].pos == Pos::Propn {
                // Runs of proper nouns form one entity.
                let mut j = i + 1;
                while j < texts.len() && tokens[j].pos == Pos::Propn {
                    j += 1;
                }
                out.push(AnnotatedEntity {
                    span: Span::new(tokens[i].span.start, tokens[j - 1].span.end),
                    kind: "MISC".to_string(),
                });
                i = j;
                continue;
            }
            i += 1;
        }
        out
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '’' | '‐')
}

/// Splits `content` into word, number and punctuation token spans.
pub fn tokenize(content: &str) -> Vec<Span> {
    let chars: Vec<(usize, char)> = content.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map_or(content.len(), |(b, _)| *b);
    let mut spans = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if is_word_char(c) {
            let numeric = c.is_ascii_digit();
            i += 1;
            while i < chars.len() {
                let c = chars[i].1;
                let next = chars.get(i + 1).map(|x| x.1);
                if is_word_char(c) {
                    i += 1;
                } else if is_joiner(c) && next.is_some_and(is_word_char) {
                    i += 2;
                } else if numeric
                    && matches!(c, '.' | ',')
                    && next.is_some_and(|n| n.is_ascii_digit())
                {
                    i += 2;
                } else {
                    break;
                }
            }
            // Abbreviation or ordinal period.
            if i < chars.len() && chars[i].1 == '.' {
                let word: String = chars[start..i].iter().map(|x| x.1).collect();
                let lower = word.to_lowercase();
                let attach = if numeric {
                    ordinal_follows(&chars, i + 1)
                } else {
                    lx::ABBREVIATIONS.contains(&lower.as_str())
                };
                if attach {
                    i += 1;
                }
            }
        } else if matches!(c, '.' | '!' | '?' | '…') {
            i += 1;
            while i < chars.len() && matches!(chars[i].1, '.' | '!' | '?' | '…') {
                i += 1;
            }
        } else if c == '-' && chars.get(i + 1).is_some_and(|x| x.1 == '-') {
            i += 2;
        } else {
            i += 1;
        }
        spans.push(Span::new(byte_at(start), byte_at(i)));
    }
    spans
}

/// True when the text after a number-period is lowercase or a month name,
/// as in `3. Juli` or `im 19. jahrhundert`.
fn ordinal_follows(chars: &[(usize, char)], mut i: usize) -> bool {
    while i < chars.len() && chars[i].1 == ' ' {
        i += 1;
    }
    let word: String = chars[i..]
        .iter()
        .map(|x| x.1)
        .take_while(|c| c.is_alphabetic())
        .collect();
    match word.chars().next() {
        None => false,
        Some(c) if c.is_lowercase() => true,
        Some(_) => {
            let lower = word.to_lowercase();
            lx::MONTHS.contains(&lower.as_str())
                || lower == "jahrhundert"
                || lower == "jahrhunderts"
        }
    }
}

fn is_terminal(text: &str) -> bool {
    !text.is_empty() && text.chars().all(|c| matches!(c, '.' | '!' | '?' | '…'))
}

fn paragraph_break(between: &str) -> bool {
    between.matches('\n').count() >= 2
}

/// Groups token spans into sentences; returns index ranges into `spans`.
fn split_sentences(content: &str, spans: &[Span]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < spans.len() {
        let text = &content[spans[i].start..spans[i].end];
        let mut end_here = false;
        let mut j = i + 1;
        if is_terminal(text) {
            while j < spans.len() && CLOSING.contains(&&content[spans[j].start..spans[j].end]) {
                // A closing quote directly attached to the period belongs here.
                if spans[j].start != spans[j - 1].end {
                    break;
                }
                j += 1;
            }
            end_here = match spans.get(j) {
                None => true,
                Some(next) => {
                    let next_text = &content[next.start..next.end];
                    let c = next_text.chars().next().unwrap_or(' ');
                    c.is_uppercase() || c.is_ascii_digit() || OPENING.contains(&next_text)
                }
            };
        } else if let Some(next) = spans.get(i + 1) {
            end_here = paragraph_break(&content[spans[i].end..next.start]);
        }
        if end_here {
            out.push(start..j);
            start = j;
            i = j;
        } else {
            i += 1;
        }
    }
    if start < spans.len() {
        out.push(start..spans.len());
    }
    out
}

fn has(list: &[&str], word: &str) -> bool {
    list.contains(&word)
}

fn capitalized(text: &str) -> bool {
    text.chars().next().is_some_and(char::is_uppercase)
}

fn is_punct(text: &str) -> bool {
    !text.chars().any(char::is_alphanumeric)
}

fn has_adjective_suffix(lower: &str) -> bool {
    lx::ADJECTIVE_SUFFIXES.iter().any(|suffix| {
        lx::ADJECTIVE_INFLECTIONS.iter().any(|infl| {
            let full = format!("{suffix}{infl}");
            lower.len() > full.len() + 2 && lower.ends_with(&full)
        })
    })
}

const SEPARABLE_PREFIXES: &[&str] = &[
    "ab", "an", "auf", "aus", "bei", "ein", "fest", "her", "hin", "los", "mit", "nach", "vor",
    "weg", "zu", "zurück", "zusammen", "um", "durch", "über", "unter", "wieder",
];

fn looks_like_participle(lower: &str) -> bool {
    if lower.len() < 5 || !(lower.ends_with('t') || lower.ends_with("en")) {
        return false;
    }
    if lower.starts_with("ge") {
        return true;
    }
    SEPARABLE_PREFIXES.iter().any(|p| {
        lower
            .strip_prefix(p)
            .is_some_and(|rest| rest.starts_with("ge") && rest.len() > 4)
    })
}

fn verb_like_suffix(lower: &str) -> bool {
    const ENDINGS: &[&str] = &[
        "t", "st", "te", "ten", "en", "et", "est", "ern", "eln", "tet",
    ];
    lower.chars().count() >= 3 && ENDINGS.iter().any(|e| lower.ends_with(e))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Draft {
    Fixed(Pos),
    /// Open-class word that might be a finite verb.
    VerbCandidate,
    Participle,
    Infinitive,
    /// Finite by lexicon (auxiliary or irregular form).
    LexFinite(Pos),
}

fn set(morph: &mut Morph, key: &str, value: &str) {
    morph.insert(key.to_string(), value.to_string());
}

/// Assigns POS tags and morphological features to one sentence.
fn tag_sentence(texts: &[&str]) -> Vec<(Pos, Morph)> {
    let n = texts.len();
    let lowers: Vec<String> = texts.iter().map(|t| t.to_lowercase()).collect();
    let first_word = texts.iter().position(|t| !is_punct(t)).unwrap_or(0);
    let mut drafts = vec![Draft::Fixed(Pos::X); n];
    let mut morphs: Vec<Morph> = vec![BTreeMap::new(); n];

    let is_clause_start = |i: usize| -> bool {
        i == first_word
            || (i > 0 && matches!(texts[i - 1], "," | ";" | ":" | "–" | "-" | "(" | "—"))
    };

    for i in 0..n {
        let text = texts[i];
        let lower = lowers[i].as_str();
        let trimmed = lower.trim_end_matches('.');
        drafts[i] = if is_punct(text) {
            if text.chars().all(|c| "%§&€$+=/*#°<>|@".contains(c)) {
                Draft::Fixed(Pos::Sym)
            } else {
                Draft::Fixed(Pos::Punct)
            }
        } else if text.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            Draft::Fixed(Pos::Num)
        } else if capitalized(text) && i != first_word {
            if lower == "sie" {
                Draft::Fixed(Pos::Pron)
            } else if text.chars().count() >= 2 && text.chars().all(|c| !c.is_lowercase()) {
                Draft::Fixed(Pos::Propn)
            } else {
                Draft::Fixed(Pos::Noun)
            }
        } else if text.ends_with('.') && has(lx::ABBREVIATIONS, trimmed) {
            Draft::Fixed(Pos::X)
        } else {
            closed_class(texts, &lowers, i, is_clause_start(i))
        };
        if drafts[i] == Draft::VerbCandidate && capitalized(text) && i == first_word {
            // Sentence-initial capitalized word outside every closed list.
            drafts[i] = Draft::Fixed(Pos::Noun);
        }
        if let Draft::Fixed(Pos::Pron) = drafts[i] {
            if is_relative_position(texts, &lowers, i) {
                set(&mut morphs[i], "PronType", "Rel");
            }
        }
    }

    // Attributive adjectives: open-class word directly before a noun.
    for i in 0..n {
        if drafts[i] == Draft::VerbCandidate {
            let next_is_noun = matches!(
                drafts.get(i + 1),
                Some(Draft::Fixed(Pos::Noun | Pos::Propn))
            );
            let prev_ok = i == 0
                || matches!(
                    drafts[i - 1],
                    Draft::Fixed(
                        Pos::Det
                            | Pos::Adp
                            | Pos::Adj
                            | Pos::Adv
                            | Pos::Punct
                            | Pos::Num
                            | Pos::Cconj
                    )
                );
            if next_is_noun && prev_ok {
                drafts[i] = Draft::Fixed(Pos::Adj);
            } else if has_adjective_suffix(&lowers[i]) && !lowers[i].ends_with("ert") {
                drafts[i] = Draft::Fixed(Pos::Adj);
            } else if i > 0 && lowers[i - 1] == "zu" && lowers[i].ends_with('n') {
                drafts[i] = Draft::Infinitive;
            } else if !verb_like_suffix(&lowers[i]) {
                drafts[i] = Draft::Fixed(Pos::Adv);
            }
        }
    }

    resolve_finiteness(texts, &lowers, &mut drafts, &mut morphs);

    // Genitive determiners and the noun they introduce.
    for i in 0..n {
        if has(lx::GENITIVE_DETERMINERS, &lowers[i]) {
            set(&mut morphs[i], "Case", "Gen");
            for j in i + 1..(i + 5).min(n) {
                match drafts[j] {
                    Draft::Fixed(Pos::Noun | Pos::Propn) => {
                        set(&mut morphs[j], "Case", "Gen");
                        break;
                    }
                    Draft::Fixed(Pos::Adj | Pos::Adv | Pos::Num) | Draft::Participle => {}
                    _ => break,
                }
            }
        }
    }

    drafts
        .into_iter()
        .zip(morphs)
        .map(|(draft, morph)| {
            let pos = match draft {
                Draft::Fixed(p) | Draft::LexFinite(p) => p,
                Draft::VerbCandidate | Draft::Participle | Draft::Infinitive => Pos::Verb,
            };
            (pos, morph)
        })
        .collect()
}

fn is_relative_position(texts: &[&str], lowers: &[String], i: usize) -> bool {
    if !has(lx::RELATIVE_PRONOUNS, &lowers[i]) || i == 0 {
        return false;
    }
    if texts[i - 1] == "," {
        return true;
    }
    // ", in dem", ", mit denen", ...
    i >= 2 && texts[i - 2] == "," && has(lx::ADPOSITIONS, &lowers[i - 1])
}

fn closed_class(texts: &[&str], lowers: &[String], i: usize, clause_start: bool) -> Draft {
    let lower = lowers[i].as_str();
    if is_relative_position(texts, lowers, i) {
        return Draft::Fixed(Pos::Pron);
    }
    if clause_start && has(lx::SUBORDINATING_CONJUNCTIONS, lower) {
        return Draft::Fixed(Pos::Sconj);
    }
    if has(lx::AUXILIARIES, lower) {
        return Draft::LexFinite(Pos::Aux);
    }
    if has(lx::COORDINATING_CONJUNCTIONS, lower) {
        return Draft::Fixed(Pos::Cconj);
    }
    if lower == "nicht" || (lower == "zu" && lowers.get(i + 1).is_some_and(|w| w.ends_with('n'))) {
        return Draft::Fixed(Pos::Part);
    }
    if has(lx::DETERMINERS, lower) {
        return Draft::Fixed(Pos::Det);
    }
    if has(lx::ADPOSITIONS, lower) {
        return Draft::Fixed(Pos::Adp);
    }
    if has(lx::PRONOUNS, lower) {
        return Draft::Fixed(Pos::Pron);
    }
    if has(lx::PARTICLES, lower) {
        return Draft::Fixed(Pos::Part);
    }
    if has(lx::ADVERBS, lower) {
        return Draft::Fixed(Pos::Adv);
    }
    if has(lx::SUBORDINATING_CONJUNCTIONS, lower) {
        return Draft::Fixed(Pos::Sconj);
    }
    if has(lx::ADJECTIVES, lower) {
        return Draft::Fixed(Pos::Adj);
    }
    if has(lx::IRREGULAR_FINITE, lower) {
        return Draft::LexFinite(Pos::Verb);
    }
    Draft::VerbCandidate
}

/// Decides which verb tokens are finite, participles or infinitives, and
/// marks voice, mood and tense. Works per comma/conjunction segment.
fn resolve_finiteness(
    texts: &[&str],
    lowers: &[String],
    drafts: &mut [Draft],
    morphs: &mut [Morph],
) {
    let n = texts.len();
    let mut seg_start = 0;
    for i in 0..=n {
        let boundary = i == n
            || matches!(texts[i], "," | ";" | ":" | "–" | "—" | "(" | ")")
            || matches!(drafts[i], Draft::Fixed(Pos::Cconj));
        if !boundary {
            continue;
        }
        resolve_segment(lowers, drafts, morphs, seg_start..i);
        seg_start = i + 1;
    }
}

fn resolve_segment(
    lowers: &[String],
    drafts: &mut [Draft],
    morphs: &mut [Morph],
    range: std::ops::Range<usize>,
) {
    let finite_aux: Vec<usize> = range
        .clone()
        .filter(|&i| matches!(drafts[i], Draft::LexFinite(Pos::Aux)))
        .collect();
    let past_werden = finite_aux.iter().any(|&i| {
        matches!(
            lowers[i].as_str(),
            "wurde" | "wurden" | "wurdest" | "wurdet"
        )
    });
    let mut have_finite = range
        .clone()
        .any(|i| matches!(drafts[i], Draft::LexFinite(_)));
    let last = range
        .clone()
        .rev()
        .find(|&i| !matches!(drafts[i], Draft::Fixed(Pos::Punct)));

    for i in range.clone() {
        let lower = lowers[i].as_str();
        match drafts[i] {
            Draft::LexFinite(Pos::Aux)
                if finite_aux.len() > 1 && Some(i) == last && lower.ends_with("en") =>
            {
                // "... wird gebaut werden": trailing infinitive auxiliary.
                drafts[i] = Draft::Infinitive;
            }
            Draft::VerbCandidate if have_finite => {
                drafts[i] = if lower.ends_with('t')
                    || looks_like_participle(lower)
                    || (past_werden && lower.ends_with("en"))
                {
                    Draft::Participle
                } else {
                    Draft::Infinitive
                };
            }
            Draft::VerbCandidate => {
                drafts[i] = Draft::LexFinite(Pos::Verb);
                have_finite = true;
            }
            _ => {}
        }
    }

    let werden_idx: Vec<usize> = range
        .clone()
        .filter(|&i| {
            has(lx::WERDEN_FORMS, &lowers[i])
                && matches!(drafts[i], Draft::LexFinite(_) | Draft::Participle)
        })
        .collect();
    let participles: Vec<usize> = range
        .clone()
        .filter(|&i| drafts[i] == Draft::Participle || lowers[i] == "worden")
        .collect();
    let passive = !werden_idx.is_empty() && participles.iter().any(|&p| lowers[p] != "worden");

    for i in range {
        let lower = lowers[i].as_str();
        match drafts[i] {
            Draft::LexFinite(_) => {
                set(&mut morphs[i], "VerbForm", "Fin");
                let mood = if has(lx::SUBJUNCTIVE_FORMS, lower) {
                    "Sub"
                } else {
                    "Ind"
                };
                set(&mut morphs[i], "Mood", mood);
                let past = matches!(
                    lower,
                    "war"
                        | "warst"
                        | "waren"
                        | "wart"
                        | "hatte"
                        | "hattest"
                        | "hatten"
                        | "hattet"
                        | "wurde"
                        | "wurdest"
                        | "wurden"
                        | "wurdet"
                        | "konnte"
                        | "konnten"
                        | "musste"
                        | "mussten"
                        | "sollte"
                        | "sollten"
                        | "wollte"
                        | "wollten"
                        | "durfte"
                        | "durften"
                        | "mochte"
                        | "mochten"
                ) || (mood == "Ind"
                    && (lower.ends_with("te") || lower.ends_with("ten") || lower.ends_with("tet")));
                set(&mut morphs[i], "Tense", if past { "Past" } else { "Pres" });
                if passive && werden_idx.contains(&i) {
                    set(&mut morphs[i], "Voice", "Pass");
                }
            }
            Draft::Participle => {
                set(&mut morphs[i], "VerbForm", "Part");
                if passive {
                    set(&mut morphs[i], "Voice", "Pass");
                }
            }
            Draft::Infinitive => set(&mut morphs[i], "VerbForm", "Inf"),
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn annotate(text: &str) -> (Annotation, Vec<String>) {
        let raw = RawText::new("t", text);
        let ann = HeuristicAnnotator::new().annotate(&raw).unwrap();
        let texts = ann
            .tokens
            .iter()
            .map(|t| text[t.span.start..t.span.end].to_string())
            .collect();
        (ann, texts)
    }

    fn finite(ann: &Annotation, texts: &[String]) -> Vec<String> {
        ann.tokens
            .iter()
            .zip(texts)
            .filter(|(t, _)| t.morph.get("VerbForm").map(String::as_str) == Some("Fin"))
            .map(|(_, s)| s.clone())
            .collect()
    }

    #[test]
    fn tokenizes_words_and_punctuation() {
        let (ann, texts) = annotate("Der Hund bellt.");
        assert_eq!(texts, ["Der", "Hund", "bellt", "."]);
        assert_eq!(ann.sentences.len(), 1);
        assert_eq!(finite(&ann, &texts), ["bellt"]);
    }

    #[test]
    fn abbreviations_and_ordinals_do_not_split() {
        let (ann, texts) = annotate("Er kam am 3. Juli z. B. mit dem Zug. Dann ging er.");
        assert_eq!(ann.sentences.len(), 2);
        assert!(texts.contains(&"3.".to_string()));
        assert!(texts.contains(&"z.".to_string()));
    }

    #[test]
    fn numbers_keep_separators() {
        let (_, texts) = annotate("Es kostet 3,5 Millionen und 1.000 Euro.");
        assert!(texts.contains(&"3,5".to_string()));
        assert!(texts.contains(&"1.000".to_string()));
    }

    #[test]
    fn adjective_before_noun_is_not_a_verb() {
        let (ann, texts) = annotate("Der große Hund");
        assert!(finite(&ann, &texts).is_empty());
    }

    #[test]
    fn passive_voice_detected() {
        let (ann, texts) = annotate("Der Ball wird geworfen.");
        let voice: Vec<_> = ann
            .tokens
            .iter()
            .zip(&texts)
            .filter(|(t, _)| t.morph.get("Voice").map(String::as_str) == Some("Pass"))
            .map(|(_, s)| s.as_str())
            .collect();
        assert_eq!(voice, ["wird", "geworfen"]);
    }

    #[test]
    fn future_is_not_passive() {
        let (ann, _) = annotate("Er wird morgen kommen.");
        assert!(ann.tokens.iter().all(|t| !t.morph.contains_key("Voice")));
    }

    #[test]
    fn relative_pronoun_after_comma() {
        let (ann, texts) = annotate("Das ist der Mann, der dort wohnt.");
        let idx = texts.iter().rposition(|t| t == "der").unwrap();
        assert_eq!(
            ann.tokens[idx].morph.get("PronType").map(String::as_str),
            Some("Rel")
        );
        assert_eq!(finite(&ann, &texts), ["ist", "wohnt"]);
    }

    #[test]
    fn genitive_marks_determiner_and_noun() {
        let (ann, texts) = annotate("Das Dach des alten Hauses ist rot.");
        let gen: Vec<_> = ann
            .tokens
            .iter()
            .zip(&texts)
            .filter(|(t, _)| t.morph.get("Case").map(String::as_str) == Some("Gen"))
            .map(|(_, s)| s.as_str())
            .collect();
        assert_eq!(gen, ["des", "Hauses"]);
    }

    #[test]
    fn subjunctive_mood() {
        let (ann, texts) = annotate("Er sagte, das wäre gut.");
        let i = texts.iter().position(|t| t == "wäre").unwrap();
        assert_eq!(
            ann.tokens[i].morph.get("Mood").map(String::as_str),
            Some("Sub")
        );
    }

    #[test]
    fn gazetteer_entities() {
        let (ann, _) = annotate("Aachen liegt nahe am Rhein.");
        let text = "Aachen liegt nahe am Rhein.";
        let surfaces: Vec<_> = ann
            .entities
            .iter()
            .map(|e| &text[e.span.start..e.span.end])
            .collect();
        assert_eq!(surfaces, ["Aachen", "Rhein"]);
    }

    #[test]
    fn paragraph_break_ends_sentence() {
        let (ann, _) = annotate("Geschichte\n\nDie Stadt wurde früh gegründet.");
        assert_eq!(ann.sentences.len(), 2);
    }
}
