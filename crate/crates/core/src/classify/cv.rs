//! Shuffled K-fold cross-validation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::Matrix;
use super::metrics::Metrics;
use super::ModelSpec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CvConfig {
    pub n_splits: usize,
    pub shuffle: bool,
    pub seed: u64,
}

impl Default for CvConfig {
    fn default() -> Self {
        Self {
            n_splits: 10,
            shuffle: true,
            seed: 10,
        }
    }
}

impl CvConfig {
    pub fn validate(&self, n_rows: usize) -> Result<()> {
        if self.n_splits < 2 || self.n_splits > n_rows {
            return Err(Error::config(format!(
                "n_splits must be in 2..={n_rows}, got {}",
                self.n_splits
            )));
        }
        Ok(())
    }
}

/// Test-row indices of each fold. The first `n % k` folds get one extra row.
pub fn kfold_indices(n: usize, cfg: &CvConfig) -> Result<Vec<Vec<usize>>> {
    cfg.validate(n)?;
    let mut order: Vec<usize> = (0..n).collect();
    if cfg.shuffle {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
    }
    let k = cfg.n_splits;
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let size = n / k + usize::from(i < n % k);
        folds.push(order[start..start + size].to_vec());
        start += size;
    }
    Ok(folds)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldMetrics {
    pub fold: usize,
    pub test_rows: usize,
    #[serde(flatten)]
    pub metrics: Metrics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub model: String,
    pub algorithm: String,
    pub folds: Vec<FoldMetrics>,
    pub mean: Metrics,
}

/// Trains a fresh model per fold (in parallel) and scores it on the held-out
/// rows. Results do not depend on scheduling.
pub fn cross_validate(spec: &ModelSpec, x: &Matrix, y: &[usize], cfg: &CvConfig, algorithm: &str) -> Result<CvReport> {
    if x.rows() != y.len() {
        return Err(Error::Dimension(format!("{} rows but {} labels", x.rows(), y.len())));
    }
    let folds = kfold_indices(x.rows(), cfg)?;
    let results: Vec<FoldMetrics> = folds
        .par_iter()
        .enumerate()
        .map(|(i, test)| {
            let mut is_test = vec![false; x.rows()];
            test.iter().for_each(|&r| is_test[r] = true);
            let train: Vec<usize> = (0..x.rows()).filter(|&r| !is_test[r]).collect();
            let (xt, yt) = (x.select_rows(&train), train.iter().map(|&r| y[r]).collect::<Vec<_>>());
            let (xv, yv) = (x.select_rows(test), test.iter().map(|&r| y[r]).collect::<Vec<_>>());
            if yv.iter().all(|&c| c == yv[0]) {
                log::warn!("fold {i} holds a single label");
            }
            let mut model = spec.build(i as u64);
            model.fit(&xt, &yt)?;
            let predicted = model.predict(&xv)?;
            Ok(FoldMetrics {
                fold: i,
                test_rows: test.len(),
                metrics: Metrics::compute(&yv, &predicted)?,
            })
        })
        .collect::<Result<_>>()?;
    let mean = Metrics::mean(&results.iter().map(|f| f.metrics).collect::<Vec<_>>());
    Ok(CvReport {
        model: spec.kind.as_str().to_string(),
        algorithm: algorithm.to_string(),
        folds: results,
        mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::ModelKind;
    use proptest::prelude::*;

    #[test]
    fn uneven_fold_sizes() {
        let folds = kfold_indices(1036, &CvConfig::default()).unwrap();
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        assert_eq!(sizes, [104, 104, 104, 104, 104, 104, 103, 103, 103, 103]);
    }

    #[test]
    fn invalid_split_counts() {
        assert!(kfold_indices(
            5,
            &CvConfig {
                n_splits: 1,
                ..CvConfig::default()
            }
        )
        .is_err());
        assert!(kfold_indices(
            5,
            &CvConfig {
                n_splits: 6,
                ..CvConfig::default()
            }
        )
        .is_err());
    }

    #[test]
    fn perfect_feature_scores_full_marks() {
        let rows: Vec<Vec<f64>> = (0..40).map(|i| vec![(i % 2) as f64, ((i / 3) % 2) as f64]).collect();
        let y: Vec<usize> = (0..40).map(|i| i % 2).collect();
        let x = Matrix::from_rows(&rows).unwrap();
        for kind in [ModelKind::Cart, ModelKind::RandomForest] {
            let report = cross_validate(&ModelSpec::new(kind), &x, &y, &CvConfig::default(), "toy").unwrap();
            for f in &report.folds {
                assert_eq!(f.metrics.accuracy, 100.0);
                assert_eq!((f.metrics.precision, f.metrics.recall, f.metrics.f1), (1.0, 1.0, 1.0));
            }
        }
    }

    proptest! {
        #[test]
        fn folds_partition_rows(n in 2usize..300, k in 2usize..12, seed in any::<u64>()) {
            prop_assume!(k <= n);
            let folds = kfold_indices(n, &CvConfig { n_splits: k, shuffle: true, seed }).unwrap();
            let mut all: Vec<usize> = folds.concat();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        }
    }
}
