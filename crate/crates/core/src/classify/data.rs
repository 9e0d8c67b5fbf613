use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

/// Dense row-major design matrix with a cached sparse view of each row.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    indptr: Vec<usize>,
    indices: Vec<u32>,
    binary: bool,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::Inconsistent("matrix values must be finite".into()));
        }
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::new();
        indptr.push(0);
        for r in 0..rows {
            for c in 0..cols {
                if data[r * cols + c] != 0.0 {
                    indices.push(c as u32);
                }
            }
            indptr.push(indices.len());
        }
        let binary = data.iter().all(|&v| v == 0.0 || v == 1.0);
        Ok(Self {
            rows,
            cols,
            data,
            indptr,
            indices,
            binary,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn from_features(m: &FeatureMatrix) -> Self {
        let data = (0..m.n_rows())
            .flat_map(|r| m.row(r).iter().map(|&v| f64::from(v)))
            .collect();
        Self::new(m.n_rows(), m.n_cols(), data).expect("feature matrix is well formed")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Column indices of the non-zero entries of row `r`.
    pub fn nonzero_cols(&self, r: usize) -> &[u32] {
        &self.indices[self.indptr[r]..self.indptr[r + 1]]
    }

    /// Whether every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.binary
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        Matrix::new(rows.len(), self.cols, data).expect("subset of a valid matrix")
    }
}

/// Maps exactly two distinct labels to 0 and 1 (sorted order).
pub fn encode_labels(labels: &[String]) -> Result<(Vec<usize>, [String; 2])> {
    let distinct: BTreeSet<&String> = labels.iter().collect();
    match distinct.len() {
        0 => Err(Error::EmptyInput("no labels")),
        1 => Err(Error::DegenerateLabels(labels[0].clone())),
        2 => {
            let mut it = distinct.into_iter();
            let names = [it.next().unwrap().clone(), it.next().unwrap().clone()];
            let encoded = labels.iter().map(|l| usize::from(*l == names[1])).collect();
            Ok((encoded, names))
        }
        n => Err(Error::MultiClass(n)),
    }
}

/// Checks shapes and that both classes are present.
pub(crate) fn check_training(x: &Matrix, y: &[usize]) -> Result<()> {
    if x.rows() != y.len() {
        return Err(Error::Dimension(format!("{} rows but {} labels", x.rows(), y.len())));
    }
    if x.cols() == 0 {
        return Err(Error::ZeroFeatures);
    }
    if let Some(&bad) = y.iter().find(|&&c| c > 1) {
        return Err(Error::MultiClass(bad + 1));
    }
    let positives = y.iter().filter(|&&c| c == 1).count();
    if positives == 0 || positives == y.len() {
        let only = y.first().map_or(0, |&c| c);
        return Err(Error::DegenerateLabels(format!("class {only}")));
    }
    Ok(())
}

pub(crate) fn check_predict(x: &Matrix, n_features: usize) -> Result<()> {
    if x.cols() != n_features {
        return Err(Error::Dimension(format!(
            "model expects {n_features} features, got {}",
            x.cols()
        )));
    }
    Ok(())
}
