//! Binary classifiers over feature matrices, cross-validation and
//! linear-model importance.

pub mod cv;
pub mod data;
pub mod forest;
pub mod logreg;
pub mod metrics;
pub mod mlp;
pub mod naive_bayes;
pub mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use cv::{cross_validate, kfold_indices, CvConfig, CvReport, FoldMetrics};
pub use data::{encode_labels, Matrix};
pub use forest::{ForestParams, RandomForest};
pub use logreg::{LogRegParams, LogisticRegression};
pub use metrics::{Confusion, Metrics};
pub use mlp::{Mlp, MlpParams};
pub use naive_bayes::GaussianNb;
pub use tree::{DecisionTree, MaxFeatures, TreeParams};

use crate::error::{Error, Result};
use crate::rng::derive_seed;

/// Labels are 0 or 1.
pub trait Classifier: Send + Sync {
    fn fit(&mut self, x: &Matrix, y: &[usize]) -> Result<()>;
    fn predict(&self, x: &Matrix) -> Result<Vec<usize>>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "logreg")]
    LogReg,
    #[serde(rename = "gnb")]
    GaussianNb,
    #[serde(rename = "cart")]
    Cart,
    #[serde(rename = "rf")]
    RandomForest,
    #[serde(rename = "mlp")]
    Mlp,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        Self::LogReg,
        Self::GaussianNb,
        Self::Cart,
        Self::RandomForest,
        Self::Mlp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::LogReg => "logreg",
            Self::GaussianNb => "gnb",
            Self::Cart => "cart",
            Self::RandomForest => "rf",
            Self::Mlp => "mlp",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::config(format!("unknown model `{s}` (logreg, gnb, cart, rf, mlp)")))
    }
}

/// A model family plus its hyper-parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    #[serde(default)]
    pub logreg: LogRegParams,
    #[serde(default)]
    pub tree: TreeParams,
    #[serde(default)]
    pub forest: ForestParams,
    #[serde(default)]
    pub mlp: MlpParams,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self {
            kind,
            logreg: LogRegParams::default(),
            tree: TreeParams::default(),
            forest: ForestParams::default(),
            mlp: MlpParams::default(),
        }
    }

    /// Fresh unfitted model. Seeded families get a seed derived from their
    /// configured seed and `fold`.
    pub fn build(&self, fold: u64) -> Box<dyn Classifier> {
        match self.kind {
            ModelKind::LogReg => Box::new(LogisticRegression::new(self.logreg.clone())),
            ModelKind::GaussianNb => Box::new(GaussianNb::new()),
            ModelKind::Cart => Box::new(DecisionTree::new(self.tree.clone(), derive_seed(0, &[fold]))),
            ModelKind::RandomForest => Box::new(RandomForest::new(ForestParams {
                seed: derive_seed(self.forest.seed, &[fold]),
                ..self.forest.clone()
            })),
            ModelKind::Mlp => Box::new(Mlp::new(MlpParams {
                seed: derive_seed(self.mlp.seed, &[fold]),
                ..self.mlp.clone()
            })),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImportanceEntry {
    pub pattern: String,
    pub score: f64,
}

/// Descending by score.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ImportanceRanking(pub Vec<ImportanceEntry>);

/// Ranks features of a fitted linear model by |weight|, dropping zeros.
/// Equal magnitudes keep column order.
pub fn top_k_importance(model: &LogisticRegression, columns: &[String], k: usize) -> Result<ImportanceRanking> {
    let w = model.weights().ok_or(Error::NotFitted)?;
    if w.len() != columns.len() {
        return Err(Error::Dimension(format!(
            "{} weights for {} columns",
            w.len(),
            columns.len()
        )));
    }
    let mut ranked: Vec<(usize, f64)> = w
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, v)| (i, v.abs()))
        .collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.truncate(k);
    Ok(ImportanceRanking(
        ranked
            .into_iter()
            .map(|(i, score)| ImportanceEntry {
                pattern: columns[i].clone(),
                score,
            })
            .collect(),
    ))
}

/// Fits logistic regression on all rows and ranks its weights.
pub fn logreg_importance(
    x: &Matrix,
    y: &[usize],
    columns: &[String],
    params: &LogRegParams,
    k: usize,
) -> Result<ImportanceRanking> {
    let mut model = LogisticRegression::new(params.clone());
    model.fit(x, y)?;
    top_k_importance(&model, columns, k)
}
