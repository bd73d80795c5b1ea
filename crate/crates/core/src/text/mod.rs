//! Document model: segmentation, tokens, sub-clauses and entities.
//!
//! All offsets are byte offsets into [`RawText::content`], half-open.
//! Adapters for external services convert their own offset units through
//! [`offsets::OffsetUnit`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod cache;
mod clauses;
pub mod corpus;
mod heuristic;
pub mod lexicon;
pub mod offsets;
mod segment;
mod syllables;
mod windows;

pub use cache::CachedAnnotator;
pub use clauses::split_clauses;
pub use heuristic::{tokenize, HeuristicAnnotator};
pub use segment::segment;
pub use syllables::count_syllables;
pub use windows::{extract_windows, is_well_formed, Excerpt};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawText {
    pub content: String,
    pub source_id: String,
    #[serde(default = "default_language")]
    pub language: String,
}

fn default_language() -> String {
    "de".to_string()
}

impl RawText {
    pub fn new(source_id: impl Into<String>, content: impl Into<String>) -> Self {
        RawText {
            content: content.into(),
            source_id: source_id.into(),
            language: default_language(),
        }
    }

    pub fn with_language(mut self, language: impl Into<String>) -> Self {
        self.language = language.into();
        self
    }
}

/// Half-open byte range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn cover(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn shifted(self, delta: isize) -> Span {
        Span::new(
            (self.start as isize + delta) as usize,
            (self.end as isize + delta) as usize,
        )
    }
}

/// Coarse part of speech (Universal Dependencies tag set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Propn,
    Verb,
    Aux,
    Adj,
    Adv,
    Pron,
    Det,
    Adp,
    Cconj,
    Sconj,
    Part,
    Num,
    Punct,
    Sym,
    #[default]
    X,
}

pub type Morph = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    pub span: Span,
    pub is_word: bool,
    /// At least 1 for words, 0 otherwise.
    pub syllable_count: u32,
    pub pos: Pos,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morph: Morph,
    /// Sentence-local index of the dependency head; equal to the token's
    /// own index for roots and when no parse is available.
    pub head: usize,
}

impl Token {
    pub fn feature(&self, key: &str) -> Option<&str> {
        self.morph.get(key).map(String::as_str)
    }

    pub fn is_finite_verb(&self) -> bool {
        self.feature("VerbForm") == Some("Fin")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub span: Span,
    pub tokens: Vec<Token>,
    pub terminal_punct: bool,
    pub has_finite_verb: bool,
}

impl Sentence {
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word)
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseKind {
    Main,
    Subordinate,
    Relative,
}

/// A finite-verb-bearing clause: a contiguous, sentence-local token range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubClause {
    pub start: usize,
    pub end: usize,
    pub kind: ClauseKind,
}

impl SubClause {
    pub fn contains(&self, token: usize) -> bool {
        self.start <= token && token < self.end
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub surface: String,
    pub span: Span,
    pub kind: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Capability {
    Segmentation,
    Pos,
    Morphology,
    Dependency,
    Ner,
}

impl fmt::Display for Capability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Capability::Segmentation => "segmentation",
            Capability::Pos => "pos",
            Capability::Morphology => "morphology",
            Capability::Dependency => "dependency",
            Capability::Ner => "ner",
        };
        f.write_str(name)
    }
}

pub type Capabilities = BTreeSet<Capability>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentedText {
    pub raw: RawText,
    pub sentences: Vec<Sentence>,
    /// One list per sentence.
    pub sub_clauses: Vec<Vec<SubClause>>,
    pub entities: Vec<Entity>,
    /// Annotation layers the producing provider filled in.
    pub capabilities: Capabilities,
}

impl SegmentedText {
    /// A document with no sentences, for empty model outputs.
    pub fn empty(raw: RawText) -> Self {
        SegmentedText {
            raw,
            sentences: Vec::new(),
            sub_clauses: Vec::new(),
            entities: Vec::new(),
            capabilities: Capabilities::new(),
        }
    }

    /// True when there is no sentence with a word token.
    pub fn is_empty(&self) -> bool {
        self.word_count() == 0
    }

    pub fn has(&self, capability: Capability) -> bool {
        self.capabilities.contains(&capability)
    }

    pub fn word_count(&self) -> usize {
        self.sentences.iter().map(Sentence::word_count).sum()
    }

    pub fn clause_count(&self) -> usize {
        self.sub_clauses.iter().map(Vec::len).sum()
    }

    /// Copy of sentences `range` as a standalone document whose content is
    /// the sentence texts joined by single spaces. All offsets are rebased.
    pub fn slice(
        &self,
        range: std::ops::Range<usize>,
        source_id: impl Into<String>,
    ) -> SegmentedText {
        let mut content = String::new();
        let mut sentences = Vec::with_capacity(range.len());
        let mut entities = Vec::new();
        for sentence in &self.sentences[range.clone()] {
            if !content.is_empty() {
                content.push(' ');
            }
            let delta = content.len() as isize - sentence.span.start as isize;
            content.push_str(&sentence.text);
            let mut rebased = sentence.clone();
            rebased.span = sentence.span.shifted(delta);
            for token in &mut rebased.tokens {
                token.span = token.span.shifted(delta);
            }
            entities.extend(
                self.entities
                    .iter()
                    .filter(|e| sentence.span.contains(e.span))
                    .map(|e| Entity {
                        surface: e.surface.clone(),
                        span: e.span.shifted(delta),
                        kind: e.kind.clone(),
                    }),
            );
            sentences.push(rebased);
        }
        SegmentedText {
            raw: RawText {
                content,
                source_id: source_id.into(),
                language: self.raw.language.clone(),
            },
            sentences,
            sub_clauses: self.sub_clauses[range].to_vec(),
            entities,
            capabilities: self.capabilities.clone(),
        }
    }
}

/// Raw provider output, before validation and derived fields.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub sentences: Vec<Span>,
    /// Document-ordered tokens. `head` is a document-level token index.
    pub tokens: Vec<AnnotatedToken>,
    #[serde(default)]
    pub entities: Vec<AnnotatedEntity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedToken {
    pub span: Span,
    #[serde(default)]
    pub pos: Pos,
    #[serde(default)]
    pub morph: Morph,
    #[serde(default)]
    pub head: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedEntity {
    pub span: Span,
    pub kind: String,
}

/// Source of linguistic annotation. Implementations must be deterministic.
pub trait AnnotationProvider: Send + Sync {
    fn id(&self) -> &str;

    fn capabilities(&self) -> Capabilities;

    /// Whether `annotate` may be called from several threads at once.
    fn concurrent(&self) -> bool {
        true
    }

    fn annotate(&self, raw: &RawText) -> Result<Annotation>;
}

impl<P: AnnotationProvider + ?Sized> AnnotationProvider for Box<P> {
    fn id(&self) -> &str {
        (**self).id()
    }
    fn capabilities(&self) -> Capabilities {
        (**self).capabilities()
    }
    fn concurrent(&self) -> bool {
        (**self).concurrent()
    }
    fn annotate(&self, raw: &RawText) -> Result<Annotation> {
        (**self).annotate(raw)
    }
}

impl<P: AnnotationProvider + ?Sized> AnnotationProvider for std::sync::Arc<P> {
    fn id(&self) -> &str {
        (**self).id()
    }
    fn capabilities(&self) -> Capabilities {
        (**self).capabilities()
    }
    fn concurrent(&self) -> bool {
        (**self).concurrent()
    }
    fn annotate(&self, raw: &RawText) -> Result<Annotation> {
        (**self).annotate(raw)
    }
}

pub(crate) fn annotation_error(provider: &str, message: impl Into<String>) -> Error {
    Error::AnnotationFailure {
        provider: provider.to_string(),
        message: message.into(),
    }
}
