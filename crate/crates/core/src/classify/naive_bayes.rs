use serde::{Deserialize, Serialize};

use super::data::{check_predict, check_training, Matrix};
use super::Classifier;
use crate::error::{Error, Result};

/// Added to every per-class feature variance.
pub const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ClassModel {
    log_prior: f64,
    means: Vec<f64>,
    variances: Vec<f64>,
}

/// Gaussian naive Bayes with maximum-likelihood moments.
#[derive(Clone, Debug, Default)]
pub struct GaussianNb {
    classes: Option<[ClassModel; 2]>,
}

impl GaussianNb {
    pub fn new() -> Self {
        Self::default()
    }

    fn joint_log_likelihood(&self, x: &Matrix) -> Result<Vec<[f64; 2]>> {
        let classes = self.classes.as_ref().ok_or(Error::NotFitted)?;
        check_predict(x, classes[0].means.len())?;
        Ok((0..x.rows())
            .map(|r| {
                let row = x.row(r);
                let mut out = [0.0; 2];
                for (k, model) in classes.iter().enumerate() {
                    let mut ll = model.log_prior;
                    for ((&v, &mu), &var) in row.iter().zip(&model.means).zip(&model.variances) {
                        let d = v - mu;
                        ll -= 0.5 * ((2.0 * std::f64::consts::PI * var).ln() + d * d / var);
                    }
                    out[k] = ll;
                }
                out
            })
            .collect())
    }

    /// Posterior probability of class 1 per row.
    pub fn predict_proba(&self, x: &Matrix) -> Result<Vec<f64>> {
        Ok(self
            .joint_log_likelihood(x)?
            .into_iter()
            .map(|[l0, l1]| {
                let m = l0.max(l1);
                let (e0, e1) = ((l0 - m).exp(), (l1 - m).exp());
                e1 / (e0 + e1)
            })
            .collect())
    }
}

impl Classifier for GaussianNb {
    fn fit(&mut self, x: &Matrix, y: &[usize]) -> Result<()> {
        check_training(x, y)?;
        let n = x.rows() as f64;
        let fit_class = |k: usize| {
            let rows: Vec<usize> = (0..x.rows()).filter(|&r| y[r] == k).collect();
            let count = rows.len() as f64;
            let mut means = vec![0.0; x.cols()];
            for &r in &rows {
                for (m, &v) in means.iter_mut().zip(x.row(r)) {
                    *m += v;
                }
            }
            means.iter_mut().for_each(|m| *m /= count);
            let mut variances = vec![0.0; x.cols()];
            for &r in &rows {
                for ((s, &v), &m) in variances.iter_mut().zip(x.row(r)).zip(&means) {
                    *s += (v - m) * (v - m);
                }
            }
            variances.iter_mut().for_each(|s| *s = *s / count + VARIANCE_FLOOR);
            ClassModel {
                log_prior: (count / n).ln(),
                means,
                variances,
            }
        };
        self.classes = Some([fit_class(0), fit_class(1)]);
        Ok(())
    }

    fn predict(&self, x: &Matrix) -> Result<Vec<usize>> {
        Ok(self
            .joint_log_likelihood(x)?
            .into_iter()
            .map(|[l0, l1]| usize::from(l1 > l0))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearer_mean_wins() {
        let x = Matrix::from_rows(&[vec![0.0], vec![0.0], vec![1.0], vec![1.0]]).unwrap();
        let mut m = GaussianNb::new();
        m.fit(&x, &[0, 0, 1, 1]).unwrap();
        let probe = Matrix::from_rows(&[vec![0.9]]).unwrap();
        assert_eq!(m.predict(&probe).unwrap(), vec![1]);
    }

    #[test]
    fn midpoint_of_symmetric_data_is_even() {
        let x = Matrix::from_rows(&[vec![-1.0], vec![-3.0], vec![1.0], vec![3.0]]).unwrap();
        let mut m = GaussianNb::new();
        m.fit(&x, &[0, 0, 1, 1]).unwrap();
        let p = m.predict_proba(&Matrix::from_rows(&[vec![0.0]]).unwrap()).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn posterior_matches_closed_form() {
        // class 0: (0,1), (2,3); class 1: (4,0), (6,2)
        let x = Matrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 3.0], vec![4.0, 0.0], vec![6.0, 2.0]]).unwrap();
        let mut m = GaussianNb::new();
        m.fit(&x, &[0, 0, 1, 1]).unwrap();
        let p = m.predict_proba(&Matrix::from_rows(&[vec![3.0, 1.0]]).unwrap()).unwrap()[0];

        // means: c0 (1, 2), c1 (5, 1); every variance is 1 (+ floor); priors equal
        let v = 1.0 + VARIANCE_FLOOR;
        let gauss =
            |x: f64, mu: f64| (-(x - mu) * (x - mu) / (2.0 * v)).exp() / (2.0 * std::f64::consts::PI * v).sqrt();
        let l0 = gauss(3.0, 1.0) * gauss(1.0, 2.0);
        let l1 = gauss(3.0, 5.0) * gauss(1.0, 1.0);
        let expected = l1 / (l0 + l1);
        assert!((p - expected).abs() < 1e-12, "{p} vs {expected}");
    }

    #[test]
    fn unfitted() {
        let x = Matrix::from_rows(&[vec![0.0]]).unwrap();
        assert!(matches!(GaussianNb::new().predict(&x), Err(Error::NotFitted)));
    }
}
