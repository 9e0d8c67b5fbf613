//! One-hidden-layer ReLU network with a logistic output, trained with Adam
//! on mean binary cross-entropy.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::data::{check_predict, check_training, Matrix};
use super::logreg::sigmoid;
use super::Classifier;
use crate::error::{Error, Result};
use crate::rng::rng_from;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MlpParams {
    pub hidden: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub max_epochs: usize,
    pub seed: u64,
    /// Minimum loss improvement that resets the patience counter.
    pub tol: f64,
    pub patience: usize,
}

impl Default for MlpParams {
    fn default() -> Self {
        Self {
            hidden: 100,
            learning_rate: 1e-3,
            batch_size: 32,
            max_epochs: 300,
            seed: 5,
            tol: 1e-6,
            patience: 10,
        }
    }
}

/// Network parameters. `w1` is stored input-major: the `hidden` weights fed
/// by input `j` are `w1[j * hidden..(j + 1) * hidden]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    pub inputs: usize,
    pub hidden: usize,
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

/// Same layout as [`Network`].
#[derive(Clone, Debug, PartialEq)]
pub struct Gradient {
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

fn xent(p_logit: f64, y: usize) -> f64 {
    // log(1 + e^z) - y z, stable
    let z = p_logit;
    let sp = if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    };
    sp - y as f64 * z
}

impl Network {
    /// Glorot-uniform weights, zero biases.
    pub fn init<R: Rng>(inputs: usize, hidden: usize, rng: &mut R) -> Self {
        let glorot = |fan_in: usize, fan_out: usize, n: usize, rng: &mut R| -> Vec<f64> {
            let bound = (6.0 / (fan_in + fan_out) as f64).sqrt();
            (0..n).map(|_| rng.gen_range(-bound..bound)).collect()
        };
        let w1 = glorot(inputs, hidden, inputs * hidden, rng);
        let w2 = glorot(hidden, 1, hidden, rng);
        Self {
            inputs,
            hidden,
            w1,
            b1: vec![0.0; hidden],
            w2,
            b2: 0.0,
        }
    }

    fn hidden_pre(&self, x: &Matrix, r: usize, out: &mut [f64]) {
        out.copy_from_slice(&self.b1);
        let h = self.hidden;
        for &c in x.nonzero_cols(r) {
            let c = c as usize;
            let v = x.get(r, c);
            for (o, &w) in out.iter_mut().zip(&self.w1[c * h..(c + 1) * h]) {
                *o += v * w;
            }
        }
    }

    /// Output logit for row `r`.
    pub fn logit(&self, x: &Matrix, r: usize) -> f64 {
        let mut pre = vec![0.0; self.hidden];
        self.hidden_pre(x, r, &mut pre);
        self.b2 + pre.iter().zip(&self.w2).map(|(&z, &w)| z.max(0.0) * w).sum::<f64>()
    }

    /// Mean cross-entropy over `rows`.
    pub fn loss(&self, x: &Matrix, y: &[usize], rows: &[usize]) -> f64 {
        rows.iter().map(|&r| xent(self.logit(x, r), y[r])).sum::<f64>() / rows.len() as f64
    }

    /// Mean cross-entropy over `rows` and its gradient.
    pub fn loss_and_gradient(&self, x: &Matrix, y: &[usize], rows: &[usize]) -> (f64, Gradient) {
        let h = self.hidden;
        let mut g = Gradient {
            w1: vec![0.0; self.w1.len()],
            b1: vec![0.0; h],
            w2: vec![0.0; h],
            b2: 0.0,
        };
        let scale = 1.0 / rows.len() as f64;
        let mut pre = vec![0.0; h];
        let mut delta = vec![0.0; h];
        let mut loss = 0.0;
        for &r in rows {
            self.hidden_pre(x, r, &mut pre);
            let z = self.b2 + pre.iter().zip(&self.w2).map(|(&p, &w)| p.max(0.0) * w).sum::<f64>();
            loss += xent(z, y[r]);
            let dz = (sigmoid(z) - y[r] as f64) * scale;
            g.b2 += dz;
            for k in 0..h {
                let active = pre[k] > 0.0;
                g.w2[k] += dz * if active { pre[k] } else { 0.0 };
                delta[k] = if active { dz * self.w2[k] } else { 0.0 };
                g.b1[k] += delta[k];
            }
            for &c in x.nonzero_cols(r) {
                let c = c as usize;
                let v = x.get(r, c);
                for (gw, &d) in g.w1[c * h..(c + 1) * h].iter_mut().zip(&delta) {
                    *gw += v * d;
                }
            }
        }
        (loss * scale, g)
    }
}

struct Adam {
    m: Vec<f64>,
    v: Vec<f64>,
    t: i32,
}

impl Adam {
    const B1: f64 = 0.9;
    const B2: f64 = 0.999;
    const EPS: f64 = 1e-8;

    fn new(n: usize) -> Self {
        Self {
            m: vec![0.0; n],
            v: vec![0.0; n],
            t: 0,
        }
    }

    /// Applies one step to the parameter slices in order.
    fn step(&mut self, lr: f64, params: [(&mut [f64], &[f64]); 4]) {
        self.t += 1;
        let lr_t = lr * (1.0 - Self::B2.powi(self.t)).sqrt() / (1.0 - Self::B1.powi(self.t));
        let mut offset = 0;
        for (p, g) in params {
            let m = &mut self.m[offset..offset + p.len()];
            let v = &mut self.v[offset..offset + p.len()];
            for i in 0..p.len() {
                let gi = g[i];
                if gi == 0.0 && m[i] == 0.0 && v[i] == 0.0 {
                    continue;
                }
                m[i] = Self::B1 * m[i] + (1.0 - Self::B1) * gi;
                v[i] = Self::B2 * v[i] + (1.0 - Self::B2) * gi * gi;
                p[i] -= lr_t * m[i] / (v[i].sqrt() + Self::EPS);
            }
            offset += p.len();
        }
    }
}

#[derive(Clone, Debug)]
pub struct Mlp {
    pub params: MlpParams,
    network: Option<Network>,
    epochs: usize,
    loss_curve: Vec<f64>,
}

impl Mlp {
    pub fn new(params: MlpParams) -> Self {
        Self {
            params,
            network: None,
            epochs: 0,
            loss_curve: Vec::new(),
        }
    }

    pub fn network(&self) -> Option<&Network> {
        self.network.as_ref()
    }

    pub fn epochs(&self) -> usize {
        self.epochs
    }

    /// Mean training loss per epoch.
    pub fn loss_curve(&self) -> &[f64] {
        &self.loss_curve
    }

    pub fn predict_proba(&self, x: &Matrix) -> Result<Vec<f64>> {
        let net = self.network.as_ref().ok_or(Error::NotFitted)?;
        check_predict(x, net.inputs)?;
        Ok((0..x.rows()).map(|r| sigmoid(net.logit(x, r))).collect())
    }
}

impl Classifier for Mlp {
    fn fit(&mut self, x: &Matrix, y: &[usize]) -> Result<()> {
        check_training(x, y)?;
        let p = &self.params;
        if p.hidden == 0 || p.batch_size == 0 || p.learning_rate.is_nan() || p.learning_rate <= 0.0 {
            return Err(Error::config("hidden, batch_size and learning_rate must be positive"));
        }
        let mut rng = rng_from(p.seed, &[]);
        let mut net = Network::init(x.cols(), p.hidden, &mut rng);
        let mut adam = Adam::new(net.w1.len() + 2 * p.hidden + 1);
        let mut order: Vec<usize> = (0..x.rows()).collect();
        let mut best = f64::INFINITY;
        let mut stale = 0;
        self.loss_curve.clear();
        self.epochs = 0;

        for _ in 0..p.max_epochs {
            self.epochs += 1;
            order.shuffle(&mut rng);
            let mut total = 0.0;
            for batch in order.chunks(p.batch_size) {
                let (loss, g) = net.loss_and_gradient(x, y, batch);
                total += loss * batch.len() as f64;
                let mut b2 = [net.b2];
                adam.step(
                    p.learning_rate,
                    [
                        (&mut net.w1, &g.w1),
                        (&mut net.b1, &g.b1),
                        (&mut net.w2, &g.w2),
                        (&mut b2, &[g.b2]),
                    ],
                );
                net.b2 = b2[0];
            }
            let epoch_loss = total / x.rows() as f64;
            self.loss_curve.push(epoch_loss);
            if epoch_loss > best - p.tol {
                stale += 1;
            } else {
                stale = 0;
            }
            best = best.min(epoch_loss);
            if stale >= p.patience {
                break;
            }
        }
        self.network = Some(net);
        Ok(())
    }

    fn predict(&self, x: &Matrix) -> Result<Vec<usize>> {
        Ok(self
            .predict_proba(x)?
            .into_iter()
            .map(|p| usize::from(p >= 0.5))
            .collect())
    }
}
