//! German readability heuristic built from six sentence and word statistics,
//! squashed to (0, 1) by a logistic function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::SegmentedText;

/// Raw statistics over word tokens. Percentages are on a 0 to 100 scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FbrInputs {
    /// Mean sentence length in syllables.
    pub s1: f64,
    /// Share of sentences with more than 6 words.
    pub s2: f64,
    /// Share of sentences with more than 16 words.
    pub s3: f64,
    /// Share of sentences with more than 20 words.
    pub s4: f64,
    /// Mean word length in syllables.
    pub w1: f64,
    /// Share of words with more than 3 syllables.
    pub w2: f64,
}

impl FbrInputs {
    pub fn as_array(&self) -> [f64; 6] {
        [self.s1, self.s2, self.s3, self.s4, self.w1, self.w2]
    }

    pub fn from_array(x: [f64; 6]) -> Self {
        FbrInputs {
            s1: x[0],
            s2: x[1],
            s3: x[2],
            s4: x[3],
            w1: x[4],
            w2: x[5],
        }
    }
}

/// Linear map sending `lower` to 0 and `upper` to 100. Not clamped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FbrComponentSpec {
    pub name: &'static str,
    pub lower: f64,
    pub upper: f64,
}

impl FbrComponentSpec {
    pub fn score(&self, x: f64) -> f64 {
        (x - self.lower) * 100.0 / (self.upper - self.lower)
    }
}

pub fn component_score(spec: &FbrComponentSpec, x: f64) -> f64 {
    spec.score(x)
}

/// The six components in order S1, S2, S3, S4, W1, W2.
pub const COMPONENTS: [FbrComponentSpec; 6] = [
    FbrComponentSpec {
        name: "S1",
        lower: 12.37,
        upper: 24.12,
    },
    FbrComponentSpec {
        name: "S2",
        lower: 41.77,
        upper: 67.42,
    },
    FbrComponentSpec {
        name: "S3",
        lower: 22.10,
        upper: 52.59,
    },
    FbrComponentSpec {
        name: "S4",
        lower: 21.90,
        upper: 64.67,
    },
    FbrComponentSpec {
        name: "W1",
        lower: 1.936,
        upper: 2.339,
    },
    FbrComponentSpec {
        name: "W2",
        lower: 10.75,
        upper: 21.21,
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityConfig {
    pub k: f64,
    pub x0: f64,
}

impl Default for ReadabilityConfig {
    fn default() -> Self {
        ReadabilityConfig { k: 0.1, x0: 50.0 }
    }
}

impl ReadabilityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0 && self.k.is_finite()) || !self.x0.is_finite() {
            return Err(Error::ConfigInvalid(format!(
                "readability sigmoid needs finite k > 0 and finite x0, got k={} x0={}",
                self.k, self.x0
            )));
        }
        Ok(())
    }
}

/// Component scores, their means and the combined raw index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FbrScores {
    /// S1, S2, S3, S4, W1, W2.
    pub components: [f64; 6],
    pub k_s: f64,
    pub k_w: f64,
    pub raw: f64,
}

pub fn fbr_inputs(doc: &SegmentedText) -> Result<FbrInputs> {
    let mut sentences = 0usize;
    let mut words = 0usize;
    let mut syllables = 0u64;
    let (mut over6, mut over16, mut over20, mut long_words) = (0usize, 0usize, 0usize, 0usize);
    for sentence in &doc.sentences {
        let n = sentence.word_count();
        if n == 0 {
            continue;
        }
        sentences += 1;
        words += n;
        over6 += usize::from(n > 6);
        over16 += usize::from(n > 16);
        over20 += usize::from(n > 20);
        for word in sentence.words() {
            syllables += u64::from(word.syllable_count);
            long_words += usize::from(word.syllable_count > 3);
        }
    }
    if words == 0 {
        return Err(Error::EmptyDocument);
    }
    let pct = |k: usize, of: usize| k as f64 * 100.0 / of as f64;
    Ok(FbrInputs {
        s1: syllables as f64 / sentences as f64,
        s2: pct(over6, sentences),
        s3: pct(over16, sentences),
        s4: pct(over20, sentences),
        w1: syllables as f64 / words as f64,
        w2: pct(long_words, words),
    })
}

pub fn fbr_raw(inputs: &FbrInputs) -> FbrScores {
    let x = inputs.as_array();
    let mut components = [0.0; 6];
    for (c, (spec, xi)) in components.iter_mut().zip(COMPONENTS.iter().zip(x)) {
        *c = spec.score(xi);
    }
    let k_s = (components[0] + components[1] + components[2] + components[3]) / 4.0;
    let k_w = (components[4] + components[5]) / 2.0;
    FbrScores {
        components,
        k_s,
        k_w,
        raw: (k_s + k_w) / 2.0,
    }
}

/// Logistic squashing; 0.5 at `raw == cfg.x0`, decreasing in `raw`.
pub fn fbr_normalized(raw: f64, cfg: &ReadabilityConfig) -> f64 {
    1.0 / (1.0 + (-cfg.k * (cfg.x0 - raw)).exp())
}
