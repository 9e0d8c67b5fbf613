//! CART classification tree with the Gini criterion.
//!
//! Nodes split while they are impure and some candidate feature is
//! non-constant; zero-gain splits are allowed, so XOR-like structure is
//! reachable. Binary matrices use a counting fast path.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::data::{check_predict, check_training, Matrix};
use super::Classifier;
use crate::error::{Error, Result};

const GAIN_EPS: f64 = 1e-12;

/// Features examined per split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaxFeatures {
    All,
    Sqrt,
    Count(usize),
}

impl MaxFeatures {
    pub fn resolve(self, n_features: usize) -> usize {
        match self {
            Self::All => n_features,
            Self::Sqrt => ((n_features as f64).sqrt() as usize).max(1),
            Self::Count(k) => k.clamp(1, n_features.max(1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TreeParams {
    pub max_depth: Option<usize>,
    pub max_features: MaxFeatures,
    pub min_samples_split: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self {
            max_depth: None,
            max_features: MaxFeatures::All,
            min_samples_split: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Leaf {
        class: usize,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Clone, Debug)]
pub struct DecisionTree {
    pub params: TreeParams,
    seed: u64,
    n_features: usize,
    nodes: Vec<Node>,
}

fn gini(counts: [usize; 2]) -> f64 {
    let n = (counts[0] + counts[1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let p = counts[0] as f64 / n;
    1.0 - p * p - (1.0 - p) * (1.0 - p)
}

fn split_gain(parent: [usize; 2], left: [usize; 2]) -> f64 {
    let right = [parent[0] - left[0], parent[1] - left[1]];
    let n = (parent[0] + parent[1]) as f64;
    let nl = (left[0] + left[1]) as f64;
    let nr = n - nl;
    gini(parent) - (nl / n) * gini(left) - (nr / n) * gini(right)
}

#[derive(Clone, Copy)]
struct Candidate {
    feature: usize,
    threshold: f64,
    gain: f64,
}

impl Candidate {
    fn beats(&self, other: &Option<Candidate>) -> bool {
        match other {
            None => true,
            Some(o) => {
                self.gain > o.gain + GAIN_EPS || ((self.gain - o.gain).abs() <= GAIN_EPS && self.feature < o.feature)
            }
        }
    }
}

struct Builder<'a> {
    x: &'a Matrix,
    y: &'a [usize],
    params: &'a TreeParams,
    n_candidates: usize,
    rng: ChaCha8Rng,
    nodes: Vec<Node>,
    ones: Vec<[u32; 2]>,
}

impl Builder<'_> {
    fn counts(&self, rows: &[usize]) -> [usize; 2] {
        let mut c = [0; 2];
        for &r in rows {
            c[self.y[r]] += 1;
        }
        c
    }

    fn feature_order(&mut self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.x.cols()).collect();
        if self.n_candidates < order.len() {
            order.shuffle(&mut self.rng);
        }
        order
    }

    /// Best split of binary features, scanning in `order` until
    /// `n_candidates` non-constant features were seen.
    fn best_binary(&mut self, rows: &[usize], parent: [usize; 2]) -> Option<Candidate> {
        self.ones.iter_mut().for_each(|c| *c = [0, 0]);
        for &r in rows {
            let label = self.y[r];
            for &c in self.x.nonzero_cols(r) {
                self.ones[c as usize][label] += 1;
            }
        }
        let n = rows.len() as u32;
        let mut best: Option<Candidate> = None;
        let mut seen = 0;
        for f in self.feature_order() {
            let [o0, o1] = self.ones[f];
            let ones = o0 + o1;
            if ones == 0 || ones == n {
                continue;
            }
            let zeros = [parent[0] - o0 as usize, parent[1] - o1 as usize];
            let cand = Candidate {
                feature: f,
                threshold: 0.5,
                gain: split_gain(parent, zeros),
            };
            if cand.beats(&best) {
                best = Some(cand);
            }
            seen += 1;
            if seen >= self.n_candidates {
                break;
            }
        }
        best
    }

    fn best_general(&mut self, rows: &[usize], parent: [usize; 2]) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        let mut seen = 0;
        let mut values: Vec<(f64, usize)> = Vec::with_capacity(rows.len());
        for f in self.feature_order() {
            values.clear();
            values.extend(rows.iter().map(|&r| (self.x.get(r, f), self.y[r])));
            values.sort_by(|a, b| a.0.total_cmp(&b.0));
            if values[0].0 == values[values.len() - 1].0 {
                continue;
            }
            let mut left = [0usize; 2];
            let mut feature_best: Option<Candidate> = None;
            for i in 0..values.len() - 1 {
                left[values[i].1] += 1;
                if values[i].0 == values[i + 1].0 {
                    continue;
                }
                let gain = split_gain(parent, left);
                if feature_best.is_none_or(|b| gain > b.gain + GAIN_EPS) {
                    feature_best = Some(Candidate {
                        feature: f,
                        threshold: (values[i].0 + values[i + 1].0) / 2.0,
                        gain,
                    });
                }
            }
            if let Some(cand) = feature_best {
                if cand.beats(&best) {
                    best = Some(cand);
                }
            }
            seen += 1;
            if seen >= self.n_candidates {
                break;
            }
        }
        best
    }

    fn build(&mut self, rows: Vec<usize>, depth: usize) -> usize {
        let counts = self.counts(&rows);
        let majority = usize::from(counts[1] > counts[0]);
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf { class: majority });

        let pure = counts[0] == 0 || counts[1] == 0;
        let depth_capped = self.params.max_depth.is_some_and(|d| depth >= d);
        if pure || depth_capped || rows.len() < self.params.min_samples_split {
            return id;
        }
        let best = if self.x.is_binary() {
            self.best_binary(&rows, counts)
        } else {
            self.best_general(&rows, counts)
        };
        let Some(best) = best else {
            return id;
        };
        let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
            .into_iter()
            .partition(|&r| self.x.get(r, best.feature) <= best.threshold);
        let left = self.build(left_rows, depth + 1);
        let right = self.build(right_rows, depth + 1);
        self.nodes[id] = Node::Split {
            feature: best.feature,
            threshold: best.threshold,
            left,
            right,
        };
        id
    }
}

impl DecisionTree {
    pub fn new(params: TreeParams, seed: u64) -> Self {
        Self {
            params,
            seed,
            n_features: 0,
            nodes: Vec::new(),
        }
    }

    /// Fits on the given row indices; repeats act as sample weights.
    pub fn fit_rows(&mut self, x: &Matrix, y: &[usize], rows: Vec<usize>) -> Result<()> {
        if x.cols() == 0 {
            return Err(Error::ZeroFeatures);
        }
        if rows.is_empty() {
            return Err(Error::EmptyInput("no rows to fit"));
        }
        let mut builder = Builder {
            x,
            y,
            params: &self.params,
            n_candidates: self.params.max_features.resolve(x.cols()),
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            nodes: Vec::new(),
            ones: if x.is_binary() {
                vec![[0, 0]; x.cols()]
            } else {
                Vec::new()
            },
        };
        builder.build(rows, 0);
        self.nodes = builder.nodes;
        self.n_features = x.cols();
        Ok(())
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], id: usize) -> usize {
            match nodes[id] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        if self.nodes.is_empty() {
            0
        } else {
            walk(&self.nodes, 0)
        }
    }

    pub fn n_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }

    pub(crate) fn predict_row(&self, row: &[f64]) -> usize {
        let mut id = 0;
        loop {
            match self.nodes[id] {
                Node::Leaf { class } => return class,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => id = if row[feature] <= threshold { left } else { right },
            }
        }
    }

    pub(crate) fn check_fitted(&self, x: &Matrix) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::NotFitted);
        }
        check_predict(x, self.n_features)
    }
}

impl Classifier for DecisionTree {
    fn fit(&mut self, x: &Matrix, y: &[usize]) -> Result<()> {
        check_training(x, y)?;
        self.fit_rows(x, y, (0..x.rows()).collect())
    }

    fn predict(&self, x: &Matrix) -> Result<Vec<usize>> {
        self.check_fitted(x)?;
        Ok((0..x.rows()).map(|r| self.predict_row(x.row(r))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit(rows: &[Vec<f64>], y: &[usize]) -> (DecisionTree, Matrix) {
        let x = Matrix::from_rows(rows).unwrap();
        let mut t = DecisionTree::new(TreeParams::default(), 0);
        t.fit(&x, y).unwrap();
        (t, x)
    }

    #[test]
    fn pure_input_is_one_leaf() {
        let x = Matrix::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        let mut t = DecisionTree::new(TreeParams::default(), 0);
        // check_training rejects single-class data, so go through fit_rows
        t.fit_rows(&x, &[1, 1], vec![0, 1]).unwrap();
        assert_eq!(t.n_leaves(), 1);
        assert_eq!(t.depth(), 0);
        assert_eq!(t.predict(&x).unwrap(), vec![1, 1]);
    }

    #[test]
    fn xor_needs_two_levels() {
        let rows = vec![
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ];
        let y = [0, 1, 1, 0, 0, 1, 1, 0];
        let (t, x) = fit(&rows, &y);
        assert_eq!(t.depth(), 2);
        assert_eq!(t.predict(&x).unwrap(), y.to_vec());
    }

    #[test]
    fn predictive_feature_gives_a_stump() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![((i * 3) % 2) as f64, (i % 2) as f64]).collect();
        let y: Vec<usize> = (0..10).map(|i| i % 2).collect();
        let (t, x) = fit(&rows, &y);
        assert_eq!(t.depth(), 1);
        assert_eq!(t.predict(&x).unwrap(), y);
    }

    #[test]
    fn continuous_thresholds() {
        let rows: Vec<Vec<f64>> = [0.1, 0.4, 0.35, 0.8, 0.9, 0.7].iter().map(|&v| vec![v]).collect();
        let y = [0, 0, 0, 1, 1, 1];
        let (t, x) = fit(&rows, &y);
        assert_eq!(t.depth(), 1);
        assert_eq!(t.predict(&x).unwrap(), y.to_vec());
        let probe = Matrix::from_rows(&[vec![0.5], vec![0.6]]).unwrap();
        // threshold halfway between 0.4 and 0.7
        assert_eq!(t.predict(&probe).unwrap(), vec![0, 1]);
    }

    #[test]
    fn identical_rows_with_mixed_labels_stop() {
        let rows = vec![vec![1.0], vec![1.0], vec![1.0]];
        let (t, _) = fit(&rows, &[0, 1, 1]);
        assert_eq!(t.n_leaves(), 1);
    }

    #[test]
    fn ties_prefer_lowest_column() {
        // columns 0 and 1 are identical and perfectly predictive
        let rows: Vec<Vec<f64>> = (0..6).map(|i| vec![(i % 2) as f64, (i % 2) as f64]).collect();
        let y: Vec<usize> = (0..6).map(|i| i % 2).collect();
        let (t, _) = fit(&rows, &y);
        assert!(matches!(t.nodes[0], Node::Split { feature: 0, .. }));
    }
}
