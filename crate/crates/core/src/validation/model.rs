use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const CONSTANT_EPS: f64 = 1e-12;

/// Per-column mean and population standard deviation of training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Standardizer {
    pub fn fit<'a>(rows: impl IntoIterator<Item = &'a [f64]>) -> Self {
        let rows: Vec<&[f64]> = rows.into_iter().collect();
        let d = rows.first().map_or(0, |r| r.len());
        let n = rows.len().max(1) as f64;
        let mut mean = vec![0.0; d];
        let mut std = vec![0.0; d];
        for j in 0..d {
            mean[j] = rows.iter().map(|r| r[j]).sum::<f64>() / n;
            std[j] = (rows.iter().map(|r| (r[j] - mean[j]).powi(2)).sum::<f64>() / n).sqrt();
        }
        Standardizer { mean, std }
    }

    /// Columns with no spread in the training rows.
    pub fn constant_columns(&self) -> Vec<usize> {
        (0..self.std.len())
            .filter(|&j| self.std[j] <= CONSTANT_EPS * (1.0 + self.mean[j].abs()))
            .collect()
    }

    pub fn transform(&self, row: &[f64], keep: &[usize]) -> Vec<f64> {
        keep.iter()
            .map(|&j| (row[j] - self.mean[j]) / self.std[j])
            .collect()
    }
}

/// L2-regularized logistic regression on standardized features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub feature_names: Vec<String>,
    /// Standardized-space weight per feature; 0 for dropped columns.
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub scaler: Standardizer,
    /// Inverse regularization strength (larger means weaker penalty).
    pub c: f64,
    /// Columns dropped because they were constant in training.
    pub dropped: Vec<String>,
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `log(1 + exp(z))` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

impl LinearModel {
    pub fn decision(&self, row: &[f64]) -> f64 {
        let mut z = self.intercept;
        for (j, w) in self.weights.iter().enumerate() {
            if *w != 0.0 {
                z += w * (row[j] - self.scaler.mean[j]) / self.scaler.std[j];
            }
        }
        z
    }

    pub fn predict_proba(&self, row: &[f64]) -> f64 {
        sigmoid(self.decision(row))
    }

    pub fn predict(&self, row: &[f64]) -> bool {
        self.decision(row) > 0.0
    }
}

/// Fits `min 0.5 |w|^2 + c * sum(logloss)` with an unpenalized intercept by
/// damped Newton steps.
pub fn train_linear(
    feature_names: &[String],
    x: &[&[f64]],
    y: &[bool],
    c: f64,
) -> Result<LinearModel> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::ConfigInvalid(format!(
            "regularization C must be positive, got {c}"
        )));
    }
    let pos = y.iter().filter(|&&b| b).count();
    if pos < 2 || y.len() - pos < 2 {
        return Err(Error::DegenerateTask {
            task: "training fold".into(),
            reason: format!(
                "{pos} positive and {} negative rows, need at least 2 of each",
                y.len() - pos
            ),
        });
    }
    let scaler = Standardizer::fit(x.iter().copied());
    let constant = scaler.constant_columns();
    let keep: Vec<usize> = (0..feature_names.len())
        .filter(|j| !constant.contains(j))
        .collect();
    let dropped: Vec<String> = constant.iter().map(|&j| feature_names[j].clone()).collect();
    if !dropped.is_empty() {
        log::debug!("dropping constant feature columns: {}", dropped.join(", "));
    }

    let n = x.len();
    let d = keep.len();
    let mut z = DMatrix::<f64>::zeros(n, d + 1);
    for (i, row) in x.iter().enumerate() {
        for (k, v) in scaler.transform(row, &keep).into_iter().enumerate() {
            z[(i, k)] = v;
        }
        z[(i, d)] = 1.0;
    }
    let t = DVector::from_iterator(n, y.iter().map(|&b| f64::from(u8::from(b))));
    let objective = |beta: &DVector<f64>| {
        let margin = &z * beta;
        let loss: f64 = (0..n).map(|i| softplus(margin[i]) - t[i] * margin[i]).sum();
        0.5 * beta.rows(0, d).norm_squared() + c * loss
    };

    let mut beta = DVector::<f64>::zeros(d + 1);
    let mut current = objective(&beta);
    for _ in 0..200 {
        let margin = &z * &beta;
        let p = margin.map(sigmoid);
        let mut grad = z.transpose() * (&p - &t) * c;
        let mut hess = {
            let w = p.map(|v| (v * (1.0 - v)).max(1e-12) * c);
            let zw = DMatrix::from_fn(n, d + 1, |i, j| z[(i, j)] * w[i]);
            z.transpose() * zw
        };
        for j in 0..d {
            grad[j] += beta[j];
            hess[(j, j)] += 1.0;
        }
        hess[(d, d)] += 1e-12;
        let step = match hess.clone().cholesky() {
            Some(ch) => ch.solve(&grad),
            None => hess
                .lu()
                .solve(&grad)
                .ok_or_else(|| Error::DegenerateTask {
                    task: "training fold".into(),
                    reason: "singular Hessian".into(),
                })?,
        };
        let mut scale = 1.0;
        let mut next = &beta - &step * scale;
        let mut value = objective(&next);
        while value > current && scale > 1e-8 {
            scale *= 0.5;
            next = &beta - &step * scale;
            value = objective(&next);
        }
        let moved = (&step * scale).amax();
        beta = next;
        let improvement = current - value;
        current = value;
        if moved < 1e-10 || improvement.abs() <= 1e-14 * (1.0 + current.abs()) {
            break;
        }
    }

    let mut weights = vec![0.0; feature_names.len()];
    for (k, &j) in keep.iter().enumerate() {
        weights[j] = beta[k];
    }
    let mut scaler = scaler;
    for &j in &constant {
        scaler.std[j] = 1.0;
    }
    Ok(LinearModel {
        feature_names: feature_names.to_vec(),
        weights,
        intercept: beta[d],
        scaler,
        c,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn names(d: usize) -> Vec<String> {
        (0..d).map(|j| format!("f{j}")).collect()
    }

    #[test]
    fn separable_clusters() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..200 {
            let center = if i % 2 == 0 { -5.0 } else { 5.0 };
            x.push(
                (0..3)
                    .map(|_| center + rng.random_range(-1.0..1.0))
                    .collect::<Vec<f64>>(),
            );
            y.push(i % 2 == 1);
        }
        let rows: Vec<&[f64]> = x.iter().map(Vec::as_slice).collect();
        let m = train_linear(&names(3), &rows, &y, 1.0).unwrap();
        let correct = rows
            .iter()
            .zip(&y)
            .filter(|(r, t)| m.predict(r) == **t)
            .count();
        assert!(correct as f64 / 200.0 >= 0.99);
        assert!(m.weights.iter().all(|w| w.is_finite() && *w > 0.0));
    }

    #[test]
    fn planted_signal_gets_largest_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut x = Vec::new();
        let mut y = Vec::new();
        for _ in 0..400 {
            let label = rng.random_bool(0.5);
            let mut row: Vec<f64> = (0..24).map(|_| rng.random_range(-1.0..1.0)).collect();
            row[7] += if label { 0.8 } else { -0.8 };
            x.push(row);
            y.push(label);
        }
        let rows: Vec<&[f64]> = x.iter().map(Vec::as_slice).collect();
        let m = train_linear(&names(24), &rows, &y, 1.0).unwrap();
        let top = (0..24)
            .max_by(|&a, &b| m.weights[a].abs().total_cmp(&m.weights[b].abs()))
            .unwrap();
        assert_eq!(top, 7);
    }

    #[test]
    fn matches_reference_optimum() {
        // One feature, symmetric data: the optimum has intercept 0, and the
        // weight solves w + c * sum((p_i - t_i) * z_i) = 0.
        let x = [[-1.0], [-1.0], [1.0], [1.0], [-1.0], [1.0]];
        let y = [false, true, true, true, false, false];
        let rows: Vec<&[f64]> = x.iter().map(|r| r.as_slice()).collect();
        let m = train_linear(&names(1), &rows, &y, 1.0).unwrap();
        assert!(m.intercept.abs() < 1e-9);
        let w = m.weights[0];
        let grad = w + 3.0 * (sigmoid(w) - 2.0 / 3.0) - 3.0 * (sigmoid(-w) - 1.0 / 3.0);
        assert!(grad.abs() < 1e-9, "{grad}");
    }

    #[test]
    fn constant_columns_are_dropped() {
        let x = [[1.0, 0.0], [1.0, 1.0], [1.0, 2.0], [1.0, 3.0]];
        let y = [false, false, true, true];
        let rows: Vec<&[f64]> = x.iter().map(|r| r.as_slice()).collect();
        let m = train_linear(&names(2), &rows, &y, 1.0).unwrap();
        assert_eq!(m.dropped, ["f0"]);
        assert_eq!(m.weights[0], 0.0);
        assert!(m.predict(&[1.0, 3.0]) && !m.predict(&[1.0, 0.0]));
    }

    #[test]
    fn needs_two_per_class() {
        let x = [[0.0], [1.0], [2.0]];
        let rows: Vec<&[f64]> = x.iter().map(|r| r.as_slice()).collect();
        let err = train_linear(&names(1), &rows, &[true, false, false], 1.0);
        assert!(matches!(err, Err(Error::DegenerateTask { .. })));
    }
}
