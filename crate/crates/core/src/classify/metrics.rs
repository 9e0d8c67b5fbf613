use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 2x2 confusion counts indexed `[truth][prediction]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion(pub [[usize; 2]; 2]);

impl Confusion {
    pub fn from_predictions(truth: &[usize], predicted: &[usize]) -> Result<Self> {
        if truth.len() != predicted.len() {
            return Err(Error::Dimension(format!(
                "{} labels but {} predictions",
                truth.len(),
                predicted.len()
            )));
        }
        let mut c = [[0; 2]; 2];
        for (&t, &p) in truth.iter().zip(predicted) {
            if t > 1 || p > 1 {
                return Err(Error::MultiClass(t.max(p) + 1));
            }
            c[t][p] += 1;
        }
        Ok(Self(c))
    }

    pub fn total(&self) -> usize {
        self.0.iter().flatten().sum()
    }
}

/// Accuracy (percent) and label-frequency-weighted precision, recall, F1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Metrics {
    /// Undefined per-class precision or recall (zero denominator) counts as 0
    /// and is logged.
    #[allow(clippy::needless_range_loop)]
    pub fn from_confusion(c: &Confusion) -> Self {
        let m = c.0;
        let total = c.total();
        if total == 0 {
            return Self::default();
        }
        let mut out = Self {
            accuracy: 100.0 * (m[0][0] + m[1][1]) as f64 / total as f64,
            ..Self::default()
        };
        for k in 0..2 {
            let support = m[k][0] + m[k][1];
            if support == 0 {
                continue;
            }
            let predicted = m[0][k] + m[1][k];
            let tp = m[k][k] as f64;
            let precision = if predicted == 0 {
                log::warn!("precision undefined for class {k} (no predictions); counted as 0");
                0.0
            } else {
                tp / predicted as f64
            };
            let recall = tp / support as f64;
            let f1 = if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            let w = support as f64 / total as f64;
            out.precision += w * precision;
            out.recall += w * recall;
            out.f1 += w * f1;
        }
        out
    }

    pub fn compute(truth: &[usize], predicted: &[usize]) -> Result<Self> {
        Ok(Self::from_confusion(&Confusion::from_predictions(truth, predicted)?))
    }

    pub fn mean(all: &[Metrics]) -> Self {
        let n = all.len().max(1) as f64;
        let sum = |f: fn(&Metrics) -> f64| all.iter().map(f).sum::<f64>() / n;
        Self {
            accuracy: sum(|m| m.accuracy),
            precision: sum(|m| m.precision),
            recall: sum(|m| m.recall),
            f1: sum(|m| m.f1),
        }
    }
}
