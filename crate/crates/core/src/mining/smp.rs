//! Cluster-then-LCS subsequence patterns.
//!
//! Sequences of one observation are grouped by average-linkage agglomerative
//! clustering over normalized edit distance, and each cluster is summarized by
//! a progressive pairwise longest common subsequence.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{canonical_order, Pattern, PatternKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClusteringConfig {
    /// Target number of clusters; capped at the number of sequences.
    pub k: usize,
}

impl Default for ClusteringConfig {
    fn default() -> Self {
        Self { k: 25 }
    }
}

impl ClusteringConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::config("cluster count must be at least 1"));
        }
        Ok(())
    }
}

/// Levenshtein distance.
pub fn edit_distance(x: &str, y: &str) -> usize {
    let x = x.as_bytes();
    let y = y.as_bytes();
    let mut prev: Vec<usize> = (0..=y.len()).collect();
    let mut cur = vec![0; y.len() + 1];
    for (i, &a) in x.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &b) in y.iter().enumerate() {
            let sub = prev[j] + usize::from(a != b);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[y.len()]
}

/// Levenshtein distance divided by the longer length; 0 for two empty strings.
pub fn edit_distance_normalized(x: &str, y: &str) -> f64 {
    let longest = x.len().max(y.len());
    if longest == 0 {
        return 0.0;
    }
    edit_distance(x, y) as f64 / longest as f64
}

/// Average-linkage agglomerative clustering cut at `min(k, n)` clusters.
///
/// Returns member indices per cluster, each sorted, with clusters ordered by
/// their smallest member. Among equal-distance merges the pair with the
/// lexicographically smallest (min-index, min-index) wins.
#[allow(clippy::needless_range_loop)]
pub fn cluster_sequences<S: AsRef<str> + Sync>(sequences: &[S], cfg: &ClusteringConfig) -> Result<Vec<Vec<usize>>> {
    cfg.validate()?;
    let n = sequences.len();
    if n == 0 {
        return Err(Error::EmptyInput("no sequences to cluster"));
    }
    let target = cfg.k.min(n);

    // sums[a][b]: total pairwise distance between clusters in slots a and b
    let mut sums: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| edit_distance_normalized(sequences[i].as_ref(), sequences[j].as_ref()))
                .collect()
        })
        .collect();
    let mut members: Vec<Option<Vec<usize>>> = (0..n).map(|i| Some(vec![i])).collect();
    let mut active = n;

    // slot ids stay equal to each cluster's smallest member
    while active > target {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..n {
            let Some(ma) = &members[a] else { continue };
            for b in a + 1..n {
                let Some(mb) = &members[b] else { continue };
                let avg = sums[a][b] / (ma.len() * mb.len()) as f64;
                if best.is_none_or(|(d, _, _)| avg < d) {
                    best = Some((avg, a, b));
                }
            }
        }
        let (_, a, b) = best.expect("at least two active clusters");
        let absorbed = members[b].take().expect("active slot");
        members[a].as_mut().expect("active slot").extend(absorbed);
        for k in 0..n {
            let add = sums[b][k];
            sums[a][k] += add;
            sums[k][a] = sums[a][k];
        }
        active -= 1;
    }

    Ok(members
        .into_iter()
        .flatten()
        .map(|mut m| {
            m.sort_unstable();
            m
        })
        .collect())
}

/// A longest common subsequence of `x` and `y`.
///
/// The backtrace prefers a diagonal match, then dropping a symbol of `x`,
/// then of `y`, so the result is deterministic.
pub fn lcs_pair(x: &str, y: &str) -> String {
    let (xb, yb) = (x.as_bytes(), y.as_bytes());
    let (m, n) = (xb.len(), yb.len());
    let width = n + 1;
    let mut table = vec![0u32; (m + 1) * width];
    for i in 1..=m {
        for j in 1..=n {
            table[i * width + j] = if xb[i - 1] == yb[j - 1] {
                table[(i - 1) * width + j - 1] + 1
            } else {
                table[(i - 1) * width + j].max(table[i * width + j - 1])
            };
        }
    }
    let mut out = Vec::with_capacity(table[m * width + n] as usize);
    let (mut i, mut j) = (m, n);
    while i > 0 && j > 0 {
        if xb[i - 1] == yb[j - 1] {
            out.push(xb[i - 1]);
            i -= 1;
            j -= 1;
        } else if table[(i - 1) * width + j] >= table[i * width + j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    out.reverse();
    String::from_utf8(out).expect("subsequence of valid input")
}

/// Whether `pattern` occurs in `sequence` in order, gaps allowed.
pub fn is_subsequence(pattern: &str, sequence: &str) -> bool {
    let mut it = sequence.bytes();
    pattern.bytes().all(|c| it.any(|s| s == c))
}

/// Folds [`lcs_pair`] over a cluster, longest members first (ties in ASCII order).
pub fn cluster_lcs<S: AsRef<str>>(members: &[S]) -> String {
    let mut ordered: Vec<&str> = members.iter().map(AsRef::as_ref).collect();
    ordered.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut iter = ordered.into_iter();
    let Some(first) = iter.next() else {
        return String::new();
    };
    iter.fold(first.to_string(), |acc, next| lcs_pair(&acc, next))
}

/// Per-cluster LCS patterns with subsequence support over all `sequences`.
/// Patterns longer than `max_len` are discarded.
pub fn smp_extract<S: AsRef<str> + Sync>(
    sequences: &[S],
    cfg: &ClusteringConfig,
    max_len: usize,
) -> Result<Vec<Pattern>> {
    let clusters = cluster_sequences(sequences, cfg)?;
    let found: BTreeSet<String> = clusters
        .par_iter()
        .map(|members| {
            let strings: Vec<&str> = members.iter().map(|&i| sequences[i].as_ref()).collect();
            cluster_lcs(&strings)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|p| !p.is_empty() && p.len() <= max_len)
        .collect();

    let n = sequences.len();
    let mut out: Vec<Pattern> = found
        .into_iter()
        .map(|p| {
            let support = sequences.iter().filter(|s| is_subsequence(&p, s.as_ref())).count();
            Pattern::new(PatternKind::Subsequence, p, support, n)
        })
        .collect();
    out.sort_by(canonical_order);
    Ok(out)
}
