//! Cross-algorithm pattern set comparison: unions, Jaccard similarity,
//! top/bottom-k overlap and per-position overlap.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mining::{Algorithm, MinedObservation};

/// Union of one algorithm's mined patterns over many observations.
///
/// `frequency[p]` is the number of observations whose mined set contains `p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniquePatternSet {
    pub algorithm: Algorithm,
    pub frequency: BTreeMap<String, usize>,
}

/// Which end of the frequency ranking to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankEnd {
    Most,
    Least,
}

impl UniquePatternSet {
    pub fn len(&self) -> usize {
        self.frequency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequency.is_empty()
    }

    pub fn patterns(&self) -> BTreeSet<String> {
        self.frequency.keys().cloned().collect()
    }

    pub fn frequency_of(&self, pattern: &str) -> usize {
        self.frequency.get(pattern).copied().unwrap_or(0)
    }

    /// Patterns by frequency (descending for `Most`, ascending for `Least`),
    /// ties in ASCII order.
    pub fn ranked(&self, end: RankEnd) -> Vec<(&str, usize)> {
        let mut v: Vec<(&str, usize)> = self.frequency.iter().map(|(p, &f)| (p.as_str(), f)).collect();
        match end {
            RankEnd::Most => v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0))),
            RankEnd::Least => v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(b.0))),
        }
        v
    }

    pub fn top_k(&self, k: usize, end: RankEnd) -> Vec<(&str, usize)> {
        let mut v = self.ranked(end);
        v.truncate(k);
        v
    }
}

/// Union of the mined sets of `observations`, which must all come from one algorithm.
pub fn union_patterns(observations: &[MinedObservation]) -> Result<UniquePatternSet> {
    let first = observations
        .first()
        .ok_or(Error::EmptyInput("no observations to union"))?;
    let algorithm = first.algorithm;
    let mut frequency = BTreeMap::new();
    for obs in observations {
        if obs.algorithm != algorithm {
            return Err(Error::KindMismatch {
                expected: algorithm.to_string(),
                found: obs.algorithm.to_string(),
            });
        }
        let distinct: BTreeSet<&str> = obs.pattern_strings().collect();
        for p in distinct {
            *frequency.entry(p.to_string()).or_insert(0) += 1;
        }
    }
    Ok(UniquePatternSet { algorithm, frequency })
}

/// `|X ∩ Y| / |X ∪ Y|`, exact-match.
pub fn jaccard<T: Ord>(x: &BTreeSet<T>, y: &BTreeSet<T>) -> Result<f64> {
    let inter = x.intersection(y).count();
    let union = x.len() + y.len() - inter;
    if union == 0 {
        return Err(Error::UndefinedJaccard);
    }
    Ok(inter as f64 / union as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapEntry {
    pub pattern: String,
    pub freq_a: usize,
    pub freq_b: usize,
}

/// Patterns that appear in both A's and B's top-k lists (taken independently),
/// ordered by A's frequency descending, then ASCII.
pub fn overlap_topk(a: &UniquePatternSet, b: &UniquePatternSet, k: usize, end: RankEnd) -> Vec<OverlapEntry> {
    let top_b: BTreeMap<&str, usize> = b.top_k(k, end).into_iter().collect();
    let mut out: Vec<OverlapEntry> = a
        .top_k(k, end)
        .into_iter()
        .filter_map(|(p, fa)| {
            top_b.get(p).map(|&fb| OverlapEntry {
                pattern: p.to_string(),
                freq_a: fa,
                freq_b: fb,
            })
        })
        .collect();
    out.sort_by(|x, y| y.freq_a.cmp(&x.freq_a).then_with(|| x.pattern.cmp(&y.pattern)));
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternFrequency {
    pub pattern: String,
    pub frequency: usize,
}

/// Partition of two positions' pattern unions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositionOverlap {
    pub position_a: String,
    pub position_b: String,
    pub only_a: Vec<PatternFrequency>,
    pub only_b: Vec<PatternFrequency>,
    /// `freq_a` / `freq_b` are the per-position observation counts.
    pub shared: Vec<OverlapEntry>,
}

fn union_frequencies<'a>(observations: impl IntoIterator<Item = &'a MinedObservation>) -> BTreeMap<String, usize> {
    let mut freq = BTreeMap::new();
    for obs in observations {
        let distinct: BTreeSet<&str> = obs.pattern_strings().collect();
        for p in distinct {
            *freq.entry(p.to_string()).or_insert(0) += 1;
        }
    }
    freq
}

fn by_frequency(freq: &BTreeMap<String, usize>, keep: impl Fn(&str) -> bool) -> Vec<PatternFrequency> {
    let mut v: Vec<PatternFrequency> = freq
        .iter()
        .filter(|(p, _)| keep(p))
        .map(|(p, &f)| PatternFrequency {
            pattern: p.clone(),
            frequency: f,
        })
        .collect();
    v.sort_by(|x, y| y.frequency.cmp(&x.frequency).then_with(|| x.pattern.cmp(&y.pattern)));
    v
}

/// Overlap between the pattern unions of two groups of observations.
/// Either group may be empty.
pub fn position_overlap(
    position_a: &str,
    group_a: &[&MinedObservation],
    position_b: &str,
    group_b: &[&MinedObservation],
) -> PositionOverlap {
    let fa = union_frequencies(group_a.iter().copied());
    let fb = union_frequencies(group_b.iter().copied());
    let mut shared: Vec<OverlapEntry> = fa
        .iter()
        .filter_map(|(p, &x)| {
            fb.get(p).map(|&y| OverlapEntry {
                pattern: p.clone(),
                freq_a: x,
                freq_b: y,
            })
        })
        .collect();
    shared.sort_by(|x, y| {
        (y.freq_a + y.freq_b)
            .cmp(&(x.freq_a + x.freq_b))
            .then_with(|| x.pattern.cmp(&y.pattern))
    });
    PositionOverlap {
        position_a: position_a.to_string(),
        position_b: position_b.to_string(),
        only_a: by_frequency(&fa, |p| !fb.contains_key(p)),
        only_b: by_frequency(&fb, |p| !fa.contains_key(p)),
        shared,
    }
}

/// [`position_overlap`] with groups selected by label; a label with no
/// observations is an error.
pub fn position_overlap_by_label(
    observations: &[MinedObservation],
    position_a: &str,
    position_b: &str,
) -> Result<PositionOverlap> {
    let group = |label: &str| -> Result<Vec<&MinedObservation>> {
        let g: Vec<&MinedObservation> = observations.iter().filter(|o| o.position == label).collect();
        if g.is_empty() {
            return Err(Error::MissingClass(label.to_string()));
        }
        Ok(g)
    };
    let a = group(position_a)?;
    let b = group(position_b)?;
    Ok(position_overlap(position_a, &a, position_b, &b))
}

/// Distinct position labels in sorted order.
pub fn positions(observations: &[MinedObservation]) -> Vec<String> {
    observations
        .iter()
        .map(|o| o.position.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Similarity and overlap between two algorithms' unique pattern sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub algorithm_a: Algorithm,
    pub algorithm_b: Algorithm,
    pub size_a: usize,
    pub size_b: usize,
    pub jaccard: f64,
    pub top_k: usize,
    pub most_frequent: Vec<OverlapEntry>,
    pub least_frequent: Vec<OverlapEntry>,
}

pub fn compare(a: &UniquePatternSet, b: &UniquePatternSet, k: usize) -> Result<Comparison> {
    if k == 0 {
        return Err(Error::config("top-k must be at least 1"));
    }
    Ok(Comparison {
        algorithm_a: a.algorithm,
        algorithm_b: b.algorithm,
        size_a: a.len(),
        size_b: b.len(),
        jaccard: jaccard(&a.patterns(), &b.patterns())?,
        top_k: k,
        most_frequent: overlap_topk(a, b, k, RankEnd::Most),
        least_frequent: overlap_topk(a, b, k, RankEnd::Least),
    })
}

/// Writes `list,pattern,freq_a,freq_b` rows for bar charts of the overlaps.
pub fn write_overlap_plot_csv<W: std::io::Write>(out: W, c: &Comparison) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["list", "pattern", "freq_a", "freq_b"])?;
    for (list, entries) in [("most", &c.most_frequent), ("least", &c.least_frequent)] {
        for e in entries {
            writer.write_record([list, &e.pattern, &e.freq_a.to_string(), &e.freq_b.to_string()])?;
        }
    }
    writer.flush()?;
    Ok(())
}
