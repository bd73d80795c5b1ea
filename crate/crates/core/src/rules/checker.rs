//! External grammar checkers and the mapping of their matches onto the
//! document model.

use serde::Deserialize;

use super::{RuleCategory, Violation};
use crate::error::{Error, Result};
use crate::text::offsets::OffsetUnit;
use crate::text::{SegmentedText, Span};

/// One remote finding, with offsets already converted to bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckerMatch {
    pub span: Span,
    pub rule_id: String,
    pub category: String,
}

pub trait GrammarChecker: Send + Sync {
    fn id(&self) -> &str;

    /// Maximum number of requests in flight.
    fn max_concurrency(&self) -> usize {
        1
    }

    fn check(&self, text: &str, language: &str) -> Result<Vec<CheckerMatch>>;
}

#[derive(Deserialize)]
struct WireResponse {
    matches: Vec<WireMatch>,
}

#[derive(Deserialize)]
struct WireMatch {
    offset: usize,
    length: usize,
    rule: WireRule,
}

#[derive(Deserialize)]
struct WireRule {
    id: String,
    #[serde(default)]
    category: Option<WireCategory>,
}

#[derive(Deserialize)]
struct WireCategory {
    id: String,
}

/// Parses a LanguageTool-compatible check response for `text`.
pub fn parse_check_response(
    provider: &str,
    text: &str,
    body: &str,
    unit: OffsetUnit,
) -> Result<Vec<CheckerMatch>> {
    let wire: WireResponse = serde_json::from_str(body)
        .map_err(|e| Error::provider(provider, format!("bad checker response: {e}")))?;
    wire.matches
        .into_iter()
        .map(|m| {
            let start = unit.to_byte(text, m.offset);
            let end = unit.to_byte(text, m.offset + m.length);
            match (start, end) {
                (Some(start), Some(end)) => Ok(CheckerMatch {
                    span: Span::new(start, end),
                    rule_id: m.rule.id,
                    category: m.rule.category.map(|c| c.id).unwrap_or_default(),
                }),
                _ => Err(Error::provider(
                    provider,
                    format!("match offset {}+{} outside the text", m.offset, m.length),
                )),
            }
        })
        .collect()
}

/// Maps checker matches to word-level violations of `category`. Matches
/// that overlap no token are dropped.
pub fn checker_violations(
    doc: &SegmentedText,
    matches: &[CheckerMatch],
    category: RuleCategory,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for m in matches {
        let overlaps = |s: Span| s.start < m.span.end.max(m.span.start + 1) && m.span.start < s.end;
        let Some(si) = doc.sentences.iter().position(|s| overlaps(s.span)) else {
            log::debug!("checker match {:?} outside every sentence", m.span);
            continue;
        };
        let sentence = &doc.sentences[si];
        let tokens: Vec<usize> = sentence
            .tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| overlaps(t.span))
            .map(|(i, _)| i)
            .collect();
        if tokens.is_empty() {
            continue;
        }
        let clauses = doc.sub_clauses.get(si).map(Vec::as_slice).unwrap_or(&[]);
        let subclause_indices = clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| tokens.iter().any(|&t| c.contains(t)))
            .map(|(k, _)| k)
            .collect();
        out.push(Violation {
            rule_id: m.rule_id.clone(),
            category,
            sentence_index: si,
            span: m.span,
            token_indices: tokens,
            subclause_indices,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{segment, HeuristicAnnotator, RawText};

    #[test]
    fn parses_and_maps_codepoint_offsets() {
        let text = "Über das Häus gehen wir.";
        let body = r#"{"matches":[{"offset":9,"length":4,"rule":{"id":"GERMAN_SPELLER_RULE","category":{"id":"TYPOS"}}}]}"#;
        let matches = parse_check_response("lt", text, body, OffsetUnit::Codepoint).unwrap();
        assert_eq!(&text[matches[0].span.start..matches[0].span.end], "Häus");
        assert_eq!(matches[0].category, "TYPOS");

        let doc = segment(&RawText::new("t", text), &HeuristicAnnotator::new()).unwrap();
        let v = checker_violations(&doc, &matches, RuleCategory::Correctness);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].token_indices, vec![2]);
        assert_eq!(v[0].subclause_indices, vec![0]);
    }

    #[test]
    fn out_of_range_offset_is_provider_failure() {
        let body = r#"{"matches":[{"offset":90,"length":4,"rule":{"id":"X"}}]}"#;
        let err = parse_check_response("lt", "kurz", body, OffsetUnit::Utf16).unwrap_err();
        assert!(err.is_provider_failure());
    }
}
