use super::clauses::{clauses_from_dependencies, split_clauses};
use super::heuristic::tokenize;
use super::{
    annotation_error, count_syllables, AnnotatedToken, AnnotationProvider, Capability, Entity, Pos,
    RawText, SegmentedText, Sentence, Span, Token,
};
use crate::error::{Error, Result};

/// Segments and annotates `raw` with `provider`.
///
/// The provider's output is validated: sentence spans must be ordered,
/// disjoint and cover every non-whitespace character; tokens must lie
/// inside sentences. Sentences the provider left untokenized are
/// tokenized with the built-in tokenizer.
pub fn segment(raw: &RawText, provider: &dyn AnnotationProvider) -> Result<SegmentedText> {
    if raw.content.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let capabilities = provider.capabilities();
    if !capabilities.contains(&Capability::Segmentation) {
        return Err(annotation_error(
            provider.id(),
            "provider does not support segmentation",
        ));
    }
    let annotation = provider.annotate(raw)?;
    let content = raw.content.as_str();
    let fail = |msg: String| annotation_error(provider.id(), msg);

    let mut sentence_spans = Vec::with_capacity(annotation.sentences.len());
    let mut cursor = 0;
    for span in &annotation.sentences {
        if span.start < cursor || span.end > content.len() || span.start > span.end {
            return Err(fail(format!(
                "sentence span {span:?} out of order or out of bounds"
            )));
        }
        if !content.is_char_boundary(span.start) || !content.is_char_boundary(span.end) {
            return Err(fail(format!("sentence span {span:?} splits a character")));
        }
        if content[cursor..span.start]
            .chars()
            .any(|c| !c.is_whitespace())
        {
            return Err(fail(format!(
                "text before byte {} is not covered by any sentence",
                span.start
            )));
        }
        cursor = span.end;
        if let Some(trimmed) = trim_span(content, *span) {
            sentence_spans.push(trimmed);
        }
    }
    if content[cursor..].chars().any(|c| !c.is_whitespace()) {
        return Err(fail(format!(
            "text after byte {cursor} is not covered by any sentence"
        )));
    }

    // Assign tokens to sentences.
    let mut per_sentence: Vec<Vec<(usize, &AnnotatedToken)>> =
        vec![Vec::new(); sentence_spans.len()];
    let mut s = 0;
    let mut last_end = 0;
    for (doc_index, token) in annotation.tokens.iter().enumerate() {
        if token.span.is_empty() || token.span.start < last_end {
            return Err(fail(format!(
                "token span {:?} empty or overlapping",
                token.span
            )));
        }
        last_end = token.span.end;
        while s < sentence_spans.len() && sentence_spans[s].end <= token.span.start {
            s += 1;
        }
        if s == sentence_spans.len() || !sentence_spans[s].contains(token.span) {
            return Err(fail(format!(
                "token span {:?} not inside a sentence",
                token.span
            )));
        }
        per_sentence[s].push((doc_index, token));
    }

    let mut sentences = Vec::with_capacity(sentence_spans.len());
    for (span, tokens) in sentence_spans.iter().zip(per_sentence) {
        sentences.push(build_sentence(content, *span, &tokens, provider.id())?);
    }

    let use_dependencies = capabilities.contains(&Capability::Dependency);
    let sub_clauses = sentences
        .iter()
        .map(|sentence| {
            if use_dependencies {
                clauses_from_dependencies(sentence)
            } else {
                split_clauses(sentence)
            }
        })
        .collect();

    let mut entities = Vec::with_capacity(annotation.entities.len());
    for entity in &annotation.entities {
        let span = entity.span;
        if span.is_empty()
            || span.end > content.len()
            || !content.is_char_boundary(span.start)
            || !content.is_char_boundary(span.end)
        {
            return Err(fail(format!("entity span {span:?} is invalid")));
        }
        entities.push(Entity {
            surface: content[span.start..span.end].to_string(),
            span,
            kind: entity.kind.clone(),
        });
    }

    Ok(SegmentedText {
        raw: raw.clone(),
        sentences,
        sub_clauses,
        entities,
        capabilities,
    })
}

fn trim_span(content: &str, span: Span) -> Option<Span> {
    let text = &content[span.start..span.end];
    let lead = text.len() - text.trim_start().len();
    let trail = text.len() - text.trim_end().len();
    let trimmed = Span::new(span.start + lead, span.end - trail);
    (!trimmed.is_empty()).then_some(trimmed)
}

fn build_sentence(
    content: &str,
    span: Span,
    tokens: &[(usize, &AnnotatedToken)],
    provider: &str,
) -> Result<Sentence> {
    let text = content[span.start..span.end].to_string();
    let first_doc_index = tokens.first().map_or(0, |t| t.0);
    let mut out: Vec<Token> = if tokens.is_empty() {
        tokenize(&text)
            .into_iter()
            .enumerate()
            .map(|(k, local)| {
                let abs = local.shifted(span.start as isize);
                let surface = &content[abs.start..abs.end];
                Token {
                    text: surface.to_string(),
                    span: abs,
                    is_word: false,
                    syllable_count: 0,
                    pos: if surface.chars().any(char::is_alphanumeric) {
                        Pos::X
                    } else {
                        Pos::Punct
                    },
                    morph: Default::default(),
                    head: k,
                }
            })
            .collect()
    } else {
        let n = tokens.len();
        tokens
            .iter()
            .enumerate()
            .map(|(k, (_, t))| {
                let head = match t.head {
                    Some(h) if h >= first_doc_index && h - first_doc_index < n => {
                        h - first_doc_index
                    }
                    Some(h) => {
                        return Err(annotation_error(
                            provider,
                            format!("dependency head {h} leaves its sentence"),
                        ));
                    }
                    None => k,
                };
                Ok(Token {
                    text: content[t.span.start..t.span.end].to_string(),
                    span: t.span,
                    is_word: false,
                    syllable_count: 0,
                    pos: t.pos,
                    morph: t.morph.clone(),
                    head,
                })
            })
            .collect::<Result<_>>()?
    };
    for token in &mut out {
        token.is_word = token.text.chars().any(char::is_alphanumeric) && token.pos != Pos::Punct;
        token.syllable_count = if token.is_word {
            count_syllables(&token.text)
        } else {
            0
        };
    }
    let terminal_punct = ends_with_terminal(&out);
    let has_finite_verb = out.iter().any(Token::is_finite_verb);
    Ok(Sentence {
        text,
        span,
        tokens: out,
        terminal_punct,
        has_finite_verb,
    })
}

fn ends_with_terminal(tokens: &[Token]) -> bool {
    const CLOSING: &[char] = &['"', '“', '”', '»', '«', '\'', '’', ')', ']'];
    tokens
        .iter()
        .rev()
        .find(|t| !t.text.chars().all(|c| CLOSING.contains(&c)))
        .is_some_and(|t| {
            let last = t.text.chars().last().unwrap_or(' ');
            matches!(last, '.' | '!' | '?' | '…') && !t.is_word
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{Annotation, Capabilities, HeuristicAnnotator};

    struct Fixed(Annotation, Capabilities);

    impl AnnotationProvider for Fixed {
        fn id(&self) -> &str {
            "fixed"
        }
        fn capabilities(&self) -> Capabilities {
            self.1.clone()
        }
        fn annotate(&self, _: &RawText) -> Result<Annotation> {
            Ok(self.0.clone())
        }
    }

    #[test]
    fn whitespace_is_empty_input() {
        let err = segment(&RawText::new("x", "  \n\t "), &HeuristicAnnotator::new()).unwrap_err();
        assert!(matches!(err, Error::EmptyInput));
    }

    #[test]
    fn single_sentence_fixture() {
        let doc = segment(
            &RawText::new("x", "Der Hund bellt."),
            &HeuristicAnnotator::new(),
        )
        .unwrap();
        assert_eq!(doc.sentences.len(), 1);
        let s = &doc.sentences[0];
        assert_eq!(s.tokens.len(), 4);
        assert_eq!(s.word_count(), 3);
        assert!(s.has_finite_verb);
        assert!(s.terminal_punct);
        assert_eq!(s.tokens[3].syllable_count, 0);
        assert_eq!(doc.sub_clauses[0].len(), 1);
    }

    #[test]
    fn two_sentences_partition_content() {
        let text = "Der Hund bellt. Die Katze schläft.";
        let doc = segment(&RawText::new("x", text), &HeuristicAnnotator::new()).unwrap();
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(doc.sentences[0].text, "Der Hund bellt.");
        assert_eq!(doc.sentences[1].text, "Die Katze schläft.");
        assert!(doc.sentences[0].span.end <= doc.sentences[1].span.start);
    }

    #[test]
    fn gap_in_coverage_is_annotation_failure() {
        let ann = Annotation {
            sentences: vec![Span::new(0, 3)],
            ..Default::default()
        };
        let provider = Fixed(ann, [Capability::Segmentation].into_iter().collect());
        let err = segment(&RawText::new("x", "abc def"), &provider).unwrap_err();
        assert!(matches!(err, Error::AnnotationFailure { .. }));
    }

    #[test]
    fn segmentation_only_provider_gets_fallback_tokens() {
        let ann = Annotation {
            sentences: vec![Span::new(0, 9)],
            ..Default::default()
        };
        let provider = Fixed(ann, [Capability::Segmentation].into_iter().collect());
        let doc = segment(&RawText::new("x", "Hallo, du"), &provider).unwrap();
        assert_eq!(doc.sentences[0].tokens.len(), 3);
        assert_eq!(doc.word_count(), 2);
        assert!(!doc.sentences[0].terminal_punct);
    }

    #[test]
    fn provider_without_segmentation_is_rejected() {
        let provider = Fixed(Annotation::default(), Capabilities::new());
        assert!(segment(&RawText::new("x", "abc"), &provider).is_err());
    }
}
