use proptest::prelude::*;
use simprof::readability::{fbr_inputs, fbr_normalized, fbr_raw, ReadabilityConfig};
use simprof::text::{segment, HeuristicAnnotator, RawText};

const WORDS: [&str; 10] = [
    "Haus",
    "Regierung",
    "beschließt",
    "neue",
    "Verantwortung",
    "für",
    "Gemeinden",
    "und",
    "Bürgermeister",
    "heute",
];

/// Sentences start with a capital so that every period is a boundary.
fn render(sentences: &[Vec<usize>]) -> String {
    sentences
        .iter()
        .map(|s| {
            let text = s.iter().map(|&i| WORDS[i]).collect::<Vec<_>>().join(" ");
            let mut chars = text.chars();
            let first = chars
                .next()
                .map(|c| c.to_uppercase().collect::<String>())
                .unwrap_or_default();
            first + chars.as_str() + "."
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn normalized(sentences: &[Vec<usize>]) -> f64 {
    let doc = segment(
        &RawText::new("d", render(sentences)),
        &HeuristicAnnotator::new(),
    )
    .unwrap();
    fbr_normalized(
        fbr_raw(&fbr_inputs(&doc).unwrap()).raw,
        &ReadabilityConfig::default(),
    )
}

/// Splits sentence `at` after `cut` words, keeping the word inventory.
fn split(sentences: &[Vec<usize>], at: usize, cut: usize) -> Vec<Vec<usize>> {
    let mut out = sentences.to_vec();
    let tail = out[at].split_off(cut);
    out.insert(at + 1, tail);
    out
}

fn document() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(0..WORDS.len(), 1..30), 1..6)
}

proptest! {
    // Splitting a sentence lowers mean sentence length. It only raises a
    // length-threshold share when both halves land above the threshold, so
    // the cut is placed such that the first half has at most 6 words.
    #[test]
    fn splitting_a_sentence_never_lowers_normalized_fbr(doc in document(), pick in any::<prop::sample::Index>(), cut in 1usize..=6) {
        let at = pick.index(doc.len());
        prop_assume!(doc[at].len() >= 2);
        let cut = cut.min(doc[at].len() - 1);
        let before = normalized(&doc);
        let after = normalized(&split(&doc, at, cut));
        prop_assert!(after >= before - 1e-12, "{before} -> {after}");
    }

    #[test]
    fn breaking_into_short_sentences_never_lowers_normalized_fbr(doc in document()) {
        let short: Vec<Vec<usize>> = doc.iter().flat_map(|s| s.chunks(6).map(<[usize]>::to_vec)).collect();
        prop_assert!(normalized(&short) >= normalized(&doc) - 1e-12);
    }
}

#[test]
fn an_even_split_of_a_long_sentence_can_lower_normalized_fbr() {
    // Ten one-word sentences and one of 14 words; halving the long one
    // raises the share of sentences over 6 words from 1/11 to 2/12, which
    // outweighs the drop in mean sentence length.
    let mut doc: Vec<Vec<usize>> = (0..10).map(|_| vec![0]).collect();
    doc.push(vec![0; 14]);
    let before = normalized(&doc);
    let after = normalized(&split(&doc, 10, 7));
    assert!(after < before, "{before} -> {after}");
}
