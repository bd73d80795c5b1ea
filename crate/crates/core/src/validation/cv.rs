use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::train_linear;
use super::{build_dataset, Dataset, TaskSpec};
use crate::error::{Error, Result};
use crate::fingerprint::io::FeatureMatrix;
use crate::hash::sha256_hex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
}

impl MeanStd {
    /// Order-independent: values are summed in sorted order.
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return MeanStd {
                mean: 0.0,
                std: 0.0,
            };
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let mut dev: Vec<f64> = v.iter().map(|x| (x - mean).powi(2)).collect();
        dev.sort_by(f64::total_cmp);
        MeanStd {
            mean,
            std: (dev.iter().sum::<f64>() / n).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CvConfig {
    pub folds: usize,
    pub repeats: usize,
    /// Inverse regularization strength.
    pub c: f64,
    pub seed: u64,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            folds: 5,
            repeats: 5,
            c: 1.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub task: String,
    /// Percent.
    pub accuracy: MeanStd,
    /// Positive-class F1 in percent.
    pub f1: MeanStd,
    pub folds: usize,
    pub repeats: usize,
    pub rows: usize,
    pub positives: usize,
    /// `(feature, mean |standardized weight|)` in dataset column order.
    pub importance: Vec<(String, f64)>,
    /// One hash of the fold assignment per repeat.
    pub fold_hashes: Vec<String>,
}

impl StudyResult {
    pub fn importance_of(&self, feature: &str) -> Option<f64> {
        self.importance
            .iter()
            .find(|(f, _)| f == feature)
            .map(|(_, w)| *w)
    }
}

/// Accuracy in percent.
pub fn accuracy(pred: &[bool], truth: &[bool]) -> f64 {
    let correct = pred.iter().zip(truth).filter(|(p, t)| p == t).count();
    correct as f64 / truth.len().max(1) as f64 * 100.0
}

/// Positive-class F1 in percent; 0 when there is no true positive.
pub fn f1_score(pred: &[bool], truth: &[bool]) -> f64 {
    let (mut tp, mut fp, mut fneg) = (0usize, 0usize, 0usize);
    for (&p, &t) in pred.iter().zip(truth) {
        match (p, t) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fneg += 1,
            (false, false) => {}
        }
    }
    if tp == 0 {
        return 0.0;
    }
    200.0 * tp as f64 / (2 * tp + fp + fneg) as f64
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Fold index per row. Each class is shuffled and dealt round-robin, so
/// every fold gets its share of both classes.
pub fn stratified_folds(y: &[bool], folds: usize, seed: u64, repeat: usize) -> Vec<usize> {
    let mut rng = rng_for(seed, repeat as u64);
    let mut assignment = vec![0; y.len()];
    let mut offset = 0;
    for class in [true, false] {
        let mut idx: Vec<usize> = (0..y.len()).filter(|&i| y[i] == class).collect();
        idx.shuffle(&mut rng);
        for (k, i) in idx.into_iter().enumerate() {
            assignment[i] = (k + offset) % folds;
        }
        // Continue dealing where the first class stopped so fold sizes
        // stay balanced overall.
        offset = y.iter().filter(|&&b| b == class).count() % folds;
    }
    assignment
}

fn fold_hash(assignment: &[usize]) -> String {
    let bytes: Vec<u8> = assignment
        .iter()
        .flat_map(|&f| (f as u32).to_le_bytes())
        .collect();
    sha256_hex(&bytes)
}

struct FoldEval {
    accuracy: f64,
    f1: f64,
    weights: Vec<f64>,
}

/// Stratified k-fold cross-validation, repeated with distinct shuffles.
/// Runs fold fits in parallel; results do not depend on scheduling.
pub fn cross_validate(ds: &Dataset, cfg: &CvConfig) -> Result<StudyResult> {
    if cfg.folds < 2 || cfg.repeats < 1 {
        return Err(Error::ConfigInvalid(
            "need at least 2 folds and 1 repeat".into(),
        ));
    }
    ds.check_classes(cfg.folds)?;
    let assignments: Vec<Vec<usize>> = (0..cfg.repeats)
        .map(|r| stratified_folds(&ds.y, cfg.folds, cfg.seed, r))
        .collect();
    let jobs: Vec<(usize, usize)> = (0..cfg.repeats)
        .flat_map(|r| (0..cfg.folds).map(move |k| (r, k)))
        .collect();
    let evals: Vec<FoldEval> = jobs
        .par_iter()
        .map(|&(r, k)| {
            let a = &assignments[r];
            let train: Vec<usize> = (0..ds.y.len()).filter(|&i| a[i] != k).collect();
            let test: Vec<usize> = (0..ds.y.len()).filter(|&i| a[i] == k).collect();
            let x: Vec<&[f64]> = train.iter().map(|&i| ds.x[i].as_slice()).collect();
            let y: Vec<bool> = train.iter().map(|&i| ds.y[i]).collect();
            let model = train_linear(&ds.feature_names, &x, &y, cfg.c).map_err(|e| match e {
                Error::DegenerateTask { reason, .. } => Error::DegenerateTask {
                    task: ds.task.clone(),
                    reason,
                },
                other => other,
            })?;
            let pred: Vec<bool> = test.iter().map(|&i| model.predict(&ds.x[i])).collect();
            let truth: Vec<bool> = test.iter().map(|&i| ds.y[i]).collect();
            Ok(FoldEval {
                accuracy: accuracy(&pred, &truth),
                f1: f1_score(&pred, &truth),
                weights: model.weights.iter().map(|w| w.abs()).collect(),
            })
        })
        .collect::<Result<_>>()?;

    let acc: Vec<f64> = evals.iter().map(|e| e.accuracy).collect();
    let f1: Vec<f64> = evals.iter().map(|e| e.f1).collect();
    let importance = ds
        .feature_names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let w: Vec<f64> = evals.iter().map(|e| e.weights[j]).collect();
            (name.clone(), MeanStd::of(&w).mean)
        })
        .collect();
    Ok(StudyResult {
        task: ds.task.clone(),
        accuracy: MeanStd::of(&acc),
        f1: MeanStd::of(&f1),
        folds: cfg.folds,
        repeats: cfg.repeats,
        rows: ds.y.len(),
        positives: ds.positives(),
        importance,
        fold_hashes: assignments.iter().map(|a| fold_hash(a)).collect(),
    })
}

/// Guesses positive with the empirical prior, independently per row.
pub fn random_baseline(y: &[bool], trials: usize, seed: u64) -> Result<StudyResult> {
    let pos = y.iter().filter(|&&b| b).count();
    if pos == 0 || pos == y.len() {
        return Err(Error::DegenerateTask {
            task: "random baseline".into(),
            reason: "both classes must be present".into(),
        });
    }
    let p = pos as f64 / y.len() as f64;
    let scores: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(seed, t as u64);
            let pred: Vec<bool> = y.iter().map(|_| rng.random_bool(p)).collect();
            (accuracy(&pred, y), f1_score(&pred, y))
        })
        .collect();
    let acc: Vec<f64> = scores.iter().map(|s| s.0).collect();
    let f1: Vec<f64> = scores.iter().map(|s| s.1).collect();
    Ok(StudyResult {
        task: "random".into(),
        accuracy: MeanStd::of(&acc),
        f1: MeanStd::of(&f1),
        folds: 0,
        repeats: trials,
        rows: y.len(),
        positives: pos,
        importance: Vec::new(),
        fold_hashes: Vec::new(),
    })
}

/// `p^2 + (1 - p)^2`, in percent.
pub fn expected_random_accuracy(p: f64) -> f64 {
    (p * p + (1.0 - p) * (1.0 - p)) * 100.0
}

/// Precision and recall of prior guessing are both `p`, so F1 is `p`.
pub fn expected_random_f1(p: f64) -> f64 {
    p * 100.0
}

/// The same pipeline on the six length features.
pub fn simple_baseline(
    matrix: &FeatureMatrix,
    task: &TaskSpec,
    cfg: &CvConfig,
) -> Result<StudyResult> {
    cross_validate(&build_dataset(matrix, &task.simple())?, cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationResult {
    pub dropped: String,
    pub with: StudyResult,
    pub without: StudyResult,
}

/// Paired runs on identical folds, with and without one feature.
pub fn ablate(ds: &Dataset, dropped: &str, cfg: &CvConfig) -> Result<AblationResult> {
    let reduced = ds.without(dropped)?;
    let with = cross_validate(ds, cfg)?;
    let without = cross_validate(&reduced, cfg)?;
    if with.fold_hashes != without.fold_hashes {
        return Err(Error::ConfigInvalid(
            "ablation arms used different folds".into(),
        ));
    }
    Ok(AblationResult {
        dropped: dropped.to_string(),
        with,
        without,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validation::Standardizer;
    use proptest::prelude::*;

    fn gaussian_ds(n: usize, shift: f64, informative: &[usize], d: usize, seed: u64) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = rand_distr::StandardNormal;
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..n {
            let label = i % 3 == 0;
            let mut row: Vec<f64> = (0..d)
                .map(|_| rand::Rng::sample::<f64, _>(&mut rng, normal))
                .collect();
            if label {
                for &j in informative {
                    row[j] += shift;
                }
            }
            x.push(row);
            y.push(label);
        }
        let names = (0..d).map(|j| format!("f{j}")).collect();
        Dataset::new("t", names, x, y).unwrap()
    }

    #[test]
    fn metric_conventions() {
        let t = [true, false, true, false];
        assert_eq!(accuracy(&[true, false, false, false], &t), 75.0);
        assert_eq!(f1_score(&[false; 4], &t), 0.0);
        assert!((f1_score(&[true, true, true, false], &t) - 80.0).abs() < 1e-12);
        assert_eq!(f1_score(&t, &t), 100.0);
    }

    #[test]
    fn all_negative_predictions_on_imbalanced_data() {
        let y: Vec<bool> = (0..60).map(|i| i % 6 == 0).collect();
        let pred = vec![false; 60];
        assert_eq!(f1_score(&pred, &y), 0.0);
        assert!((accuracy(&pred, &y) - 500.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn folds_are_stratified() {
        let y: Vec<bool> = (0..103).map(|i| i % 4 == 0).collect();
        let a = stratified_folds(&y, 5, 9, 0);
        for k in 0..5 {
            let pos = (0..y.len()).filter(|&i| a[i] == k && y[i]).count();
            let all = (0..y.len()).filter(|&i| a[i] == k).count();
            assert!((5..=6).contains(&pos), "{pos}");
            assert!((20..=21).contains(&all), "{all}");
        }
        assert_ne!(a, stratified_folds(&y, 5, 9, 1));
        assert_eq!(a, stratified_folds(&y, 5, 9, 0));
    }

    #[test]
    fn separable_data_scores_high() {
        let ds = gaussian_ds(300, 6.0, &[0, 1], 5, 3);
        let r = cross_validate(&ds, &CvConfig::default()).unwrap();
        assert!(r.f1.mean >= 99.0 && r.f1.std <= 1.0, "{:?}", r.f1);
        assert_eq!(r.fold_hashes.len(), 5);
        assert_eq!(r, cross_validate(&ds, &CvConfig::default()).unwrap());
    }

    #[test]
    fn permuted_labels_give_majority_rate() {
        let mut ds = gaussian_ds(600, 3.0, &[0, 1, 2], 6, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        ds.y.shuffle(&mut rng);
        let r = cross_validate(&ds, &CvConfig::default()).unwrap();
        let majority = (1.0 - ds.prior()) * 100.0;
        assert!(
            (r.accuracy.mean - majority).abs() <= 5.0,
            "{} vs {}",
            r.accuracy.mean,
            majority
        );
    }

    #[test]
    fn planted_feature_ranks_first() {
        let ds = gaussian_ds(400, 1.5, &[4], 23, 6);
        let r = cross_validate(&ds, &CvConfig::default()).unwrap();
        let top = r
            .importance
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert_eq!(top.0, "f4");
    }

    #[test]
    fn importance_ignores_affine_rescaling() {
        let ds = gaussian_ds(200, 1.0, &[1], 4, 7);
        let mut scaled = ds.clone();
        for row in &mut scaled.x {
            row[2] = row[2] * 250.0 - 40.0;
        }
        let a = cross_validate(&ds, &CvConfig::default()).unwrap();
        let b = cross_validate(&scaled, &CvConfig::default()).unwrap();
        for ((_, wa), (_, wb)) in a.importance.iter().zip(&b.importance) {
            assert!((wa - wb).abs() < 1e-6, "{wa} vs {wb}");
        }
        assert!((a.f1.mean - b.f1.mean).abs() < 1e-9);
    }

    #[test]
    fn noise_importance_is_flat() {
        let mut ok = 0;
        for trial in 0..20 {
            let ds = gaussian_ds(300, 0.0, &[], 23, 100 + trial);
            let r = cross_validate(&ds, &CvConfig::default()).unwrap();
            if r.importance.iter().all(|x| x.1 < 0.6) {
                ok += 1;
            }
        }
        assert!(ok >= 19, "{ok}/20");
    }

    #[test]
    fn random_baseline_closed_forms() {
        for (n_pos, n) in [(1, 2), (1, 3), (1, 6)] {
            let y: Vec<bool> = (0..6000).map(|i| i % n < n_pos).collect();
            let p = n_pos as f64 / n as f64;
            let r = random_baseline(&y, 1000, 11).unwrap();
            let se_acc = r.accuracy.std / (1000f64).sqrt();
            let se_f1 = r.f1.std / (1000f64).sqrt();
            assert!(
                (r.accuracy.mean - expected_random_accuracy(p)).abs() <= 3.0 * se_acc + 1e-9,
                "{p}: {:?}",
                r.accuracy
            );
            // F1 of prior guessing is slightly biased below p for finite n.
            assert!(
                (r.f1.mean - expected_random_f1(p)).abs() <= 3.0 * se_f1 + 0.05,
                "{p}: {:?}",
                r.f1
            );
        }
        assert!(random_baseline(&[true, true], 10, 0).is_err());
    }

    #[test]
    fn ablation_uses_identical_folds() {
        let ds = gaussian_ds(300, 2.0, &[0], 5, 8);
        let noise = ablate(&ds, "f3", &CvConfig::default()).unwrap();
        assert_eq!(noise.with.fold_hashes, noise.without.fold_hashes);
        assert!((noise.with.f1.mean - noise.without.f1.mean).abs() <= 2.0);
        let signal = ablate(&ds, "f0", &CvConfig::default()).unwrap();
        assert!(signal.without.f1.mean < signal.with.f1.mean - 30.0);
        assert!(matches!(
            ablate(&ds, "zzz", &CvConfig::default()),
            Err(Error::UnknownFeature(_))
        ));
    }

    #[test]
    fn degenerate_when_a_class_is_too_small() {
        let mut ds = gaussian_ds(50, 1.0, &[0], 3, 9);
        ds.y = (0..50).map(|i| i < 3).collect();
        assert!(matches!(
            cross_validate(&ds, &CvConfig::default()),
            Err(Error::DegenerateTask { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn training_statistics_ignore_test_rows(seed in any::<u64>(), k in 0usize..5, corrupt in -1e6f64..1e6) {
            let ds = gaussian_ds(60, 1.0, &[0], 3, seed);
            let a = stratified_folds(&ds.y, 5, seed, 0);
            let train = |x: &Vec<Vec<f64>>| {
                Standardizer::fit((0..x.len()).filter(|&i| a[i] != k).map(|i| x[i].as_slice()))
            };
            let before = train(&ds.x);
            let mut x = ds.x.clone();
            for i in (0..x.len()).filter(|&i| a[i] == k) {
                x[i].iter_mut().for_each(|v| *v = corrupt);
            }
            prop_assert_eq!(before, train(&x));
        }

        #[test]
        fn aggregation_is_order_independent(mut v in prop::collection::vec(0.0f64..100.0, 1..30), seed in any::<u64>()) {
            let a = MeanStd::of(&v);
            v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(a, MeanStd::of(&v));
            prop_assert!(a.std >= 0.0);
        }
    }
}
