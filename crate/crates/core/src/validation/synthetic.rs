//! Gaussian feature matrices with planted signal, for checking the study
//! pipeline against known answers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::Target;
use crate::error::{Error, Result};
use crate::fingerprint::io::{FeatureMatrix, MatrixRow};
use crate::fingerprint::{feature_index, Features, AUX_NAMES, FEATURE_COUNT};
use crate::label::ConfigurationLabel;

/// Every column is standard normal; rows positive for `target` get
/// `shift` standard deviations added to each listed column.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub rows_per_label: usize,
    pub target: Target,
    pub signal: Vec<(String, f64)>,
    pub seed: u64,
}

pub fn synthetic_matrix(spec: &SyntheticSpec) -> Result<FeatureMatrix> {
    let mut shifts_f = [0.0; FEATURE_COUNT];
    let mut shifts_a = [0.0; 3];
    for (name, shift) in &spec.signal {
        if let Some(i) = feature_index(name) {
            shifts_f[i] += shift;
        } else if let Some(i) = AUX_NAMES.iter().position(|n| n == name) {
            shifts_a[i] += shift;
        } else {
            return Err(Error::UnknownFeature(name.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows = Vec::new();
    for label in ConfigurationLabel::all() {
        for k in 0..spec.rows_per_label {
            let positive = spec.target.classify(&label) == Some(true);
            let mut f = [0.0; FEATURE_COUNT];
            for (i, v) in f.iter_mut().enumerate() {
                *v =
                    rng.sample::<f64, _>(StandardNormal) + if positive { shifts_f[i] } else { 0.0 };
            }
            let mut aux = [0.0; 3];
            for (i, v) in aux.iter_mut().enumerate() {
                *v =
                    rng.sample::<f64, _>(StandardNormal) + if positive { shifts_a[i] } else { 0.0 };
            }
            rows.push(MatrixRow {
                pair_id: format!("syn-{label}-{k}"),
                label: Some(label),
                features: Features(f),
                aux,
            });
        }
    }
    Ok(FeatureMatrix { header: None, rows })
}

/// Same matrix with labels shuffled across rows.
pub fn permute_labels(matrix: &FeatureMatrix, seed: u64) -> FeatureMatrix {
    use rand::seq::SliceRandom;
    let mut labels: Vec<_> = matrix.rows.iter().map(|r| r.label).collect();
    labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut out = matrix.clone();
    for (row, label) in out.rows.iter_mut().zip(labels) {
        row.label = label;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::PromptStrategy;

    #[test]
    fn planted_shift() {
        let spec = SyntheticSpec {
            rows_per_label: 200,
            target: Target::Strategy {
                strategy: PromptStrategy::Target,
            },
            signal: vec![("COV".into(), 2.0), ("aux_char_count".into(), 1.0)],
            seed: 1,
        };
        let m = synthetic_matrix(&spec).unwrap();
        assert_eq!(m.rows.len(), 18 * 200);
        let mean = |pos: bool, col: &str| {
            let v: Vec<f64> = m
                .rows
                .iter()
                .zip(m.column(col).unwrap())
                .filter(|(r, _)| (r.label.unwrap().strategy == PromptStrategy::Target) == pos)
                .map(|(_, v)| v)
                .collect();
            v.iter().sum::<f64>() / v.len() as f64
        };
        assert!((mean(true, "COV") - mean(false, "COV") - 2.0).abs() < 0.2);
        assert!((mean(true, "aux_char_count") - mean(false, "aux_char_count") - 1.0).abs() < 0.2);
        assert!((mean(true, "SIM") - mean(false, "SIM")).abs() < 0.2);
        let bad = SyntheticSpec {
            signal: vec![("nope".into(), 1.0)],
            ..spec
        };
        assert!(synthetic_matrix(&bad).is_err());
    }
}
