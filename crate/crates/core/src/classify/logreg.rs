//! L1-penalized logistic regression fitted by accelerated proximal gradient.
//!
//! Objective, with an unpenalized intercept:
//!
//! ```text
//! C * sum_i [ log(1 + exp(z_i)) - y_i z_i ] + ||w||_1,   z_i = x_i . w + b
//! ```

use serde::{Deserialize, Serialize};

use super::data::{check_predict, check_training, Matrix};
use super::Classifier;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LogRegParams {
    /// Inverse regularization strength (weight of the data term).
    pub c: f64,
    /// Stop when the proximal gradient-mapping norm drops below this.
    pub tol: f64,
    pub max_epochs: usize,
}

impl Default for LogRegParams {
    fn default() -> Self {
        Self {
            c: 1.0,
            tol: 1e-4,
            max_epochs: 1000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LogisticRegression {
    pub params: LogRegParams,
    weights: Option<Vec<f64>>,
    bias: f64,
    epochs: usize,
}

fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn margin(x: &Matrix, r: usize, w: &[f64], b: f64) -> f64 {
    if x.is_binary() {
        b + x.nonzero_cols(r).iter().map(|&c| w[c as usize]).sum::<f64>()
    } else {
        b + x
            .nonzero_cols(r)
            .iter()
            .map(|&c| w[c as usize] * x.get(r, c as usize))
            .sum::<f64>()
    }
}

fn smooth_loss(x: &Matrix, y: &[usize], w: &[f64], b: f64, c: f64) -> f64 {
    (0..x.rows())
        .map(|r| {
            let z = margin(x, r, w, b);
            softplus(z) - y[r] as f64 * z
        })
        .sum::<f64>()
        * c
}

/// Value and gradient (weights, intercept) of the smooth data term.
pub fn smooth_loss_and_gradient(x: &Matrix, y: &[usize], w: &[f64], b: f64, c: f64) -> (f64, Vec<f64>, f64) {
    let mut gw = vec![0.0; x.cols()];
    let mut gb = 0.0;
    let mut loss = 0.0;
    for (r, &label) in y.iter().enumerate().take(x.rows()) {
        let z = margin(x, r, w, b);
        loss += softplus(z) - label as f64 * z;
        let residual = sigmoid(z) - label as f64;
        gb += residual;
        for &col in x.nonzero_cols(r) {
            gw[col as usize] += residual * x.get(r, col as usize);
        }
    }
    gw.iter_mut().for_each(|g| *g *= c);
    (loss * c, gw, gb * c)
}

fn soft_threshold(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

fn l1(w: &[f64]) -> f64 {
    w.iter().map(|v| v.abs()).sum()
}

impl LogisticRegression {
    pub fn new(params: LogRegParams) -> Self {
        Self {
            params,
            weights: None,
            bias: 0.0,
            epochs: 0,
        }
    }

    /// A model with the given parameters, as if fitted.
    pub fn from_weights(params: LogRegParams, weights: Vec<f64>, bias: f64) -> Self {
        Self {
            params,
            weights: Some(weights),
            bias,
            epochs: 0,
        }
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    /// Iterations used by the last fit.
    pub fn epochs(&self) -> usize {
        self.epochs
    }

    pub fn decision_function(&self, x: &Matrix) -> Result<Vec<f64>> {
        let w = self.weights.as_ref().ok_or(Error::NotFitted)?;
        check_predict(x, w.len())?;
        Ok((0..x.rows()).map(|r| margin(x, r, w, self.bias)).collect())
    }

    pub fn predict_proba(&self, x: &Matrix) -> Result<Vec<f64>> {
        Ok(self.decision_function(x)?.into_iter().map(sigmoid).collect())
    }

    /// Penalized objective at the current parameters.
    pub fn objective(&self, x: &Matrix, y: &[usize]) -> Result<f64> {
        let w = self.weights.as_ref().ok_or(Error::NotFitted)?;
        Ok(smooth_loss(x, y, w, self.bias, self.params.c) + l1(w))
    }
}

impl Classifier for LogisticRegression {
    fn fit(&mut self, x: &Matrix, y: &[usize]) -> Result<()> {
        check_training(x, y)?;
        let c = self.params.c;
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::config("C must be positive"));
        }
        let d = x.cols();
        let full_objective = |w: &[f64], b: f64| smooth_loss(x, y, w, b, c) + l1(w);

        let (mut w, mut b) = (vec![0.0; d], 0.0);
        let (mut yw, mut yb) = (w.clone(), b);
        let mut t = 1.0f64;
        let mut lipschitz = c * 0.25;
        let mut current = full_objective(&w, b);
        let mut epochs = 0;

        while epochs < self.params.max_epochs {
            epochs += 1;
            let (fy, gw, gb) = smooth_loss_and_gradient(x, y, &yw, yb, c);
            let (nw, nb, step_norm) = loop {
                let step = 1.0 / lipschitz;
                let nw: Vec<f64> = yw
                    .iter()
                    .zip(&gw)
                    .map(|(&v, &g)| soft_threshold(v - step * g, step))
                    .collect();
                let nb = yb - step * gb;
                let mut lin = gb * (nb - yb);
                let mut sq = (nb - yb) * (nb - yb);
                for j in 0..d {
                    let dj = nw[j] - yw[j];
                    lin += gw[j] * dj;
                    sq += dj * dj;
                }
                let f_new = smooth_loss(x, y, &nw, nb, c);
                if f_new <= fy + lin + 0.5 * lipschitz * sq + 1e-12 * fy.abs().max(1.0) {
                    break (nw, nb, sq.sqrt());
                }
                lipschitz *= 2.0;
            };

            let mapping_norm = lipschitz * step_norm;
            let candidate = full_objective(&nw, nb);
            if candidate > current {
                // restart momentum from the last iterate
                t = 1.0;
                yw.clone_from(&w);
                yb = b;
                continue;
            }
            let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
            let momentum = (t - 1.0) / t_next;
            for j in 0..d {
                yw[j] = nw[j] + momentum * (nw[j] - w[j]);
            }
            yb = nb + momentum * (nb - b);
            w = nw;
            b = nb;
            t = t_next;
            current = candidate;
            if mapping_norm <= self.params.tol {
                break;
            }
        }

        self.weights = Some(w);
        self.bias = b;
        self.epochs = epochs;
        Ok(())
    }

    fn predict(&self, x: &Matrix) -> Result<Vec<usize>> {
        Ok(self
            .decision_function(x)?
            .into_iter()
            .map(|z| usize::from(z >= 0.0))
            .collect())
    }
}
