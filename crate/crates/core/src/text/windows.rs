use serde::{Deserialize, Serialize};

use super::{SegmentedText, Sentence};

/// Consecutive well-formed sentences cut from one article.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Excerpt {
    pub article_id: String,
    pub window_index: usize,
    /// The window as a standalone document.
    pub doc: SegmentedText,
}

impl Excerpt {
    pub fn id(&self) -> String {
        excerpt_id(&self.article_id, self.window_index)
    }

    pub fn text(&self) -> &str {
        &self.doc.raw.content
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.doc.sentences
    }
}

pub fn excerpt_id(article_id: &str, window_index: usize) -> String {
    format!("{article_id}#w{window_index}")
}

/// A sentence with a finite verb and terminal punctuation.
pub fn is_well_formed(sentence: &Sentence) -> bool {
    sentence.has_finite_verb && sentence.terminal_punct
}

/// Non-overlapping windows of `window` well-formed sentences. A window
/// never spans an ill-formed sentence; counting restarts after one.
pub fn extract_windows(article: &SegmentedText, window: usize) -> Vec<Excerpt> {
    assert!(window >= 1, "window must be at least 1");
    let mut out = Vec::new();
    let mut run_start = 0;
    for (i, sentence) in article.sentences.iter().enumerate() {
        if !is_well_formed(sentence) {
            run_start = i + 1;
            continue;
        }
        if i + 1 - run_start == window {
            let index = out.len();
            let id = excerpt_id(&article.raw.source_id, index);
            out.push(Excerpt {
                article_id: article.raw.source_id.clone(),
                window_index: index,
                doc: article.slice(run_start..i + 1, id),
            });
            run_start = i + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{segment, HeuristicAnnotator, RawText};

    fn doc(text: &str) -> SegmentedText {
        segment(&RawText::new("a1", text), &HeuristicAnnotator::new()).unwrap()
    }

    fn good(n: usize) -> String {
        (0..n)
            .map(|i| format!("Der Hund {i} bellt laut."))
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn well_formedness() {
        assert!(is_well_formed(&doc("Der Hund bellt.").sentences[0]));
        assert!(!is_well_formed(&doc("Der große Hund").sentences[0]));
        assert!(!is_well_formed(&doc("Siehe Tabelle 3").sentences[0]));
    }

    #[test]
    fn window_counts() {
        assert_eq!(extract_windows(&doc(&good(5)), 5).len(), 1);
        assert_eq!(extract_windows(&doc(&good(4)), 5).len(), 0);
        let w = extract_windows(&doc(&good(11)), 5);
        assert_eq!(w.len(), 2);
        assert_eq!(w[0].sentences()[0].text, "Der Hund 0 bellt laut.");
        assert_eq!(w[1].sentences()[0].text, "Der Hund 5 bellt laut.");
        assert_eq!(w[1].id(), "a1#w1");
    }

    #[test]
    fn ill_formed_sentence_restarts_window() {
        let text = format!("{} Eine Liste ohne Verb. {}", good(3), good(5));
        let w = extract_windows(&doc(&text), 5);
        assert_eq!(w.len(), 1);
        assert!(w[0].sentences().iter().all(is_well_formed));
        assert_eq!(w[0].sentences()[0].text, "Der Hund 0 bellt laut.");
        assert_eq!(w[0].doc.sentences[0].span.start, 0);
    }

    #[test]
    fn excerpt_offsets_are_rebased() {
        let w = extract_windows(&doc(&good(10)), 5);
        let d = &w[1].doc;
        for s in &d.sentences {
            assert_eq!(&d.raw.content[s.span.start..s.span.end], s.text);
            for t in &s.tokens {
                assert_eq!(&d.raw.content[t.span.start..t.span.end], t.text);
            }
        }
    }
}
