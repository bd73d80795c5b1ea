//! Sub-clause extraction.
//!
//! A sub-clause is a contiguous token range holding at least one finite
//! verb. Sentences without a finite verb have no sub-clauses.

use super::{ClauseKind, Pos, Sentence, SubClause, Token};

#[derive(Debug, Clone, Copy)]
struct Segment {
    start: usize,
    kind: ClauseKind,
}

fn is_relative(token: &Token) -> bool {
    token.feature("PronType") == Some("Rel")
}

fn opens_clause(tokens: &[Token], i: usize) -> Option<ClauseKind> {
    let t = tokens.get(i)?;
    if t.pos == Pos::Sconj {
        return Some(ClauseKind::Subordinate);
    }
    if is_relative(t) {
        return Some(ClauseKind::Relative);
    }
    if t.pos == Pos::Adp && tokens.get(i + 1).is_some_and(is_relative) {
        return Some(ClauseKind::Relative);
    }
    None
}

/// Splits a sentence using punctuation and part-of-speech cues only.
///
/// A clause opens at a comma followed by a subordinating conjunction or a
/// relative pronoun (optionally preceded by a preposition). An embedded
/// clause closes at the first comma after its finite verb, returning to the
/// enclosing clause kind.
pub fn split_clauses(sentence: &Sentence) -> Vec<SubClause> {
    let tokens = &sentence.tokens;
    if !tokens.iter().any(Token::is_finite_verb) {
        return Vec::new();
    }
    let first_word = tokens.iter().position(|t| t.is_word).unwrap_or(0);
    let initial = opens_clause(tokens, first_word).unwrap_or(ClauseKind::Main);

    // (kind, has seen a finite verb)
    let mut stack = vec![(ClauseKind::Main, false)];
    if initial != ClauseKind::Main {
        stack.push((initial, false));
    }
    let mut segments = vec![Segment {
        start: 0,
        kind: initial,
    }];
    for (i, token) in tokens.iter().enumerate() {
        if token.text == "," {
            if let Some(kind) = opens_clause(tokens, i + 1) {
                stack.push((kind, false));
                segments.push(Segment { start: i + 1, kind });
                continue;
            }
            if stack.len() > 1 && stack.last().is_some_and(|s| s.1) {
                stack.pop();
                let kind = stack.last().map_or(ClauseKind::Main, |s| s.0);
                segments.push(Segment { start: i + 1, kind });
            }
        }
        if token.is_finite_verb() {
            if let Some(top) = stack.last_mut() {
                top.1 = true;
            }
        }
    }
    finish(tokens, segments)
}

/// Splits a sentence using dependency arcs: each token belongs to the
/// nearest finite verb on its head chain.
pub(crate) fn clauses_from_dependencies(sentence: &Sentence) -> Vec<SubClause> {
    let tokens = &sentence.tokens;
    let n = tokens.len();
    if !tokens.iter().any(Token::is_finite_verb) {
        return Vec::new();
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, slot) in owner.iter_mut().enumerate() {
        let mut cur = i;
        for _ in 0..=n {
            if tokens[cur].is_finite_verb() {
                *slot = Some(cur);
                break;
            }
            let head = tokens[cur].head;
            if head == cur || head >= n {
                break;
            }
            cur = head;
        }
    }
    // Tokens outside every finite clause join the preceding token's clause.
    let mut last = owner.iter().flatten().next().copied();
    for slot in &mut owner {
        match slot {
            Some(v) => last = Some(*v),
            None => *slot = last,
        }
    }

    let mut segments = Vec::new();
    for i in 0..n {
        if i == 0 || owner[i] != owner[i - 1] {
            let kind = opens_clause(tokens, i)
                .or_else(|| {
                    // Leading punctuation before the clause opener.
                    let next = (i..n).find(|&j| tokens[j].is_word)?;
                    if owner[next] == owner[i] {
                        opens_clause(tokens, next)
                    } else {
                        None
                    }
                })
                .unwrap_or(ClauseKind::Main);
            segments.push(Segment { start: i, kind });
        }
    }
    finish(tokens, segments)
}

/// Splits segments holding several finite verbs, then folds verbless
/// segments into a neighbour.
fn finish(tokens: &[Token], segments: Vec<Segment>) -> Vec<SubClause> {
    let n = tokens.len();
    let mut clauses: Vec<SubClause> = Vec::new();
    for (k, seg) in segments.iter().enumerate() {
        let end = segments.get(k + 1).map_or(n, |s| s.start);
        if seg.start >= end {
            continue;
        }
        let verbs: Vec<usize> = (seg.start..end)
            .filter(|&i| tokens[i].is_finite_verb())
            .collect();
        let mut start = seg.start;
        let mut kind = seg.kind;
        for pair in verbs.windows(2) {
            let cut = (pair[0] + 1..pair[1])
                .find(|&i| tokens[i].pos == Pos::Cconj || tokens[i].text == ",");
            if let Some(cut) = cut {
                let at = if tokens[cut].text == "," {
                    cut + 1
                } else {
                    cut
                };
                clauses.push(SubClause {
                    start,
                    end: at,
                    kind,
                });
                start = at;
                kind = opens_clause(tokens, start).unwrap_or(seg.kind);
            }
        }
        clauses.push(SubClause { start, end, kind });
    }

    let has_verb = |c: &SubClause| c.range().any(|i| tokens[i].is_finite_verb());
    let mut merged: Vec<SubClause> = Vec::with_capacity(clauses.len());
    let mut pending: Option<usize> = None;
    for clause in clauses {
        if !has_verb(&clause) {
            match merged.last_mut() {
                Some(prev) => prev.end = clause.end,
                None => pending = Some(pending.unwrap_or(clause.start)),
            }
            continue;
        }
        let mut clause = clause;
        if let Some(start) = pending.take() {
            clause.start = start;
        }
        merged.push(clause);
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{segment, HeuristicAnnotator, RawText};

    fn clauses(text: &str) -> (Vec<SubClause>, Vec<String>) {
        let doc = segment(&RawText::new("t", text), &HeuristicAnnotator::new()).unwrap();
        let texts = doc.sentences[0]
            .tokens
            .iter()
            .map(|t| t.text.clone())
            .collect();
        (doc.sub_clauses[0].clone(), texts)
    }

    fn render(c: &SubClause, texts: &[String]) -> String {
        texts[c.range()].join(" ")
    }

    #[test]
    fn simple_sentence_is_one_main_clause() {
        let (c, _) = clauses("Der Hund bellt.");
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, ClauseKind::Main);
        assert_eq!(c[0].range(), 0..4);
    }

    #[test]
    fn verbless_sentence_has_no_clauses() {
        let (c, _) = clauses("Der große Hund.");
        assert!(c.is_empty());
    }

    #[test]
    fn subordinate_clause_after_comma() {
        let (c, t) = clauses("Er bleibt zu Hause, weil er krank ist.");
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].kind, ClauseKind::Main);
        assert_eq!(c[1].kind, ClauseKind::Subordinate);
        assert_eq!(render(&c[1], &t), "weil er krank ist .");
    }

    #[test]
    fn leading_subordinate_clause() {
        let (c, t) = clauses("Weil er krank ist, bleibt er zu Hause.");
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].kind, ClauseKind::Subordinate);
        assert_eq!(render(&c[0], &t), "Weil er krank ist ,");
        assert_eq!(c[1].kind, ClauseKind::Main);
    }

    #[test]
    fn embedded_relative_clause() {
        let (c, t) = clauses("Der Mann, der dort steht, ist alt.");
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].kind, ClauseKind::Relative);
        assert_eq!(render(&c[0], &t), "Der Mann , der dort steht ,");
        assert_eq!(render(&c[1], &t), "ist alt .");
    }

    #[test]
    fn coordinated_main_clauses_split_at_conjunction() {
        let (c, t) = clauses("Er kam und sie ging.");
        assert_eq!(c.len(), 2);
        assert_eq!(render(&c[1], &t), "und sie ging .");
    }

    #[test]
    fn clauses_are_contiguous_and_disjoint() {
        let (c, _) = clauses("Die Stadt, in der er lebt, liegt am Rhein, und sie wächst, weil viele Menschen kommen.");
        assert!(c.len() >= 3);
        for pair in c.windows(2) {
            assert!(pair[0].end <= pair[1].start);
        }
    }

    #[test]
    fn dependency_mode_uses_head_chain() {
        let mut doc = segment(
            &RawText::new("t", "Der Mann, der dort steht, ist alt."),
            &HeuristicAnnotator::new(),
        )
        .unwrap();
        let s = &mut doc.sentences[0];
        // Der Mann , der dort steht , ist alt .
        let heads = [1, 7, 1, 5, 5, 1, 5, 7, 7, 7];
        for (t, h) in s.tokens.iter_mut().zip(heads) {
            t.head = h;
        }
        let c = clauses_from_dependencies(s);
        assert_eq!(c.len(), 2);
        assert!(c
            .iter()
            .all(|cl| cl.range().any(|i| s.tokens[i].is_finite_verb())));
        assert!(c.iter().any(|cl| cl.kind == ClauseKind::Relative));
    }
}
