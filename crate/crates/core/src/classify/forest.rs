use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::{check_training, Matrix};
use super::tree::{DecisionTree, MaxFeatures, TreeParams};
use super::Classifier;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ForestParams {
    pub n_trees: usize,
    pub seed: u64,
    pub max_features: MaxFeatures,
    pub bootstrap: bool,
}

impl Default for ForestParams {
    fn default() -> Self {
        Self {
            n_trees: 100,
            seed: 1,
            max_features: MaxFeatures::Sqrt,
            bootstrap: true,
        }
    }
}

/// Bagged CART trees with per-split feature subsampling; majority vote.
#[derive(Clone, Debug)]
pub struct RandomForest {
    pub params: ForestParams,
    trees: Vec<DecisionTree>,
}

impl RandomForest {
    pub fn new(params: ForestParams) -> Self {
        Self {
            params,
            trees: Vec::new(),
        }
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }

    /// Fraction of trees voting for class 1, per row.
    pub fn vote_fraction(&self, x: &Matrix) -> Result<Vec<f64>> {
        let first = self.trees.first().ok_or(Error::NotFitted)?;
        first.check_fitted(x)?;
        let n = self.trees.len() as f64;
        Ok((0..x.rows())
            .into_par_iter()
            .map(|r| {
                let row = x.row(r);
                self.trees.iter().filter(|t| t.predict_row(row) == 1).count() as f64 / n
            })
            .collect())
    }
}

impl Classifier for RandomForest {
    fn fit(&mut self, x: &Matrix, y: &[usize]) -> Result<()> {
        check_training(x, y)?;
        if self.params.n_trees == 0 {
            return Err(Error::config("n_trees must be at least 1"));
        }
        let n = x.rows();
        let params = &self.params;
        self.trees = (0..params.n_trees)
            .into_par_iter()
            .map(|i| {
                let rows: Vec<usize> = if params.bootstrap {
                    let mut rng = rng_from(params.seed, &[i as u64, 0]);
                    (0..n).map(|_| rng.gen_range(0..n)).collect()
                } else {
                    (0..n).collect()
                };
                let tree_params = TreeParams {
                    max_features: params.max_features,
                    ..TreeParams::default()
                };
                let mut tree = DecisionTree::new(tree_params, derive_seed(params.seed, &[i as u64, 1]));
                tree.fit_rows(x, y, rows)?;
                Ok(tree)
            })
            .collect::<Result<_>>()?;
        Ok(())
    }

    fn predict(&self, x: &Matrix) -> Result<Vec<usize>> {
        // ties go to class 0
        Ok(self
            .vote_fraction(x)?
            .into_iter()
            .map(|f| usize::from(f > 0.5))
            .collect())
    }
}
