//! Frequent movement-pattern miners and the pattern CSV format.
//!
//! Three miners share one [`Pattern`] type:
//!
//! * [`contiguous`]: closed contiguous patterns of bounded length (LCCspm).
//! * [`itemset`]: closed itemsets over per-sequence symbol sets (AprioriClose).
//! * [`smp`]: cluster-then-LCS subsequence patterns (SMP framework).

pub mod contiguous;
pub mod itemset;
pub mod smp;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::ObservationSet;

pub use contiguous::{mine_closed_contiguous, support_contiguous};
pub use itemset::{mine_closed_itemsets, to_transactions, Transaction};
pub use smp::{cluster_sequences, edit_distance_normalized, lcs_pair, smp_extract, ClusteringConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Contiguous,
    Itemset,
    Subsequence,
}

impl PatternKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Contiguous => "contiguous",
            Self::Itemset => "itemset",
            Self::Subsequence => "subsequence",
        }
    }

    pub fn algorithm(self) -> Algorithm {
        match self {
            Self::Contiguous => Algorithm::Lccspm,
            Self::Itemset => Algorithm::AprioriClose,
            Self::Subsequence => Algorithm::SmpLcs,
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contiguous" => Ok(Self::Contiguous),
            "itemset" => Ok(Self::Itemset),
            "subsequence" => Ok(Self::Subsequence),
            other => Err(Error::config(format!("unknown pattern kind `{other}`"))),
        }
    }
}

/// The three mining algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "lccspm")]
    Lccspm,
    #[serde(rename = "aprioriclose")]
    AprioriClose,
    #[serde(rename = "smp-lcs")]
    SmpLcs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Self::Lccspm, Self::SmpLcs, Self::AprioriClose];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Lccspm => "lccspm",
            Self::AprioriClose => "aprioriclose",
            Self::SmpLcs => "smp-lcs",
        }
    }

    pub fn kind(self) -> PatternKind {
        match self {
            Self::Lccspm => PatternKind::Contiguous,
            Self::AprioriClose => PatternKind::Itemset,
            Self::SmpLcs => PatternKind::Subsequence,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lccspm" => Ok(Self::Lccspm),
            "aprioriclose" => Ok(Self::AprioriClose),
            "smp-lcs" => Ok(Self::SmpLcs),
            other => Err(Error::config(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// A mined pattern with its sequence-level support.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pattern {
    pub kind: PatternKind,
    pub symbols: String,
    pub support_count: usize,
    pub support_fraction: f64,
}

impl Pattern {
    pub fn new(kind: PatternKind, symbols: String, support_count: usize, n_sequences: usize) -> Self {
        Self {
            kind,
            symbols,
            support_count,
            support_fraction: support_count as f64 / n_sequences as f64,
        }
    }
}

/// Descending support, then ascending length, then ASCII.
pub fn canonical_order(a: &Pattern, b: &Pattern) -> Ordering {
    b.support_count
        .cmp(&a.support_count)
        .then(a.symbols.len().cmp(&b.symbols.len()))
        .then_with(|| a.symbols.cmp(&b.symbols))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MinerConfig {
    /// Minimum support as a fraction of the sequences in one observation.
    pub min_support: f64,
    /// Maximum pattern length in symbols.
    pub max_len: usize,
}

impl Default for MinerConfig {
    fn default() -> Self {
        Self {
            min_support: 0.05,
            max_len: 20,
        }
    }
}

impl MinerConfig {
    pub fn new(min_support: f64, max_len: usize) -> Self {
        Self { min_support, max_len }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min_support > 0.0 && self.min_support <= 1.0) {
            return Err(Error::config("min_support must lie in (0, 1]"));
        }
        if self.max_len == 0 {
            return Err(Error::config("max_len must be at least 1"));
        }
        Ok(())
    }

    /// Absolute support threshold for `n` sequences: `ceil(min_support * n)`, at least 1.
    pub fn threshold(&self, n: usize) -> usize {
        // absorb representation error such as 0.07 * 100 = 7.000000000000001
        let raw = self.min_support * n as f64;
        ((raw - 1e-9).ceil() as usize).max(1)
    }
}

/// Parameters for mining one observation with any algorithm.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MiningParams {
    pub miner: MinerConfig,
    pub clustering: ClusteringConfig,
}

/// Mined patterns of one observation.
#[derive(Clone, Debug, PartialEq)]
pub struct MinedObservation {
    pub observation_id: String,
    pub position: String,
    pub algorithm: Algorithm,
    pub patterns: Vec<Pattern>,
}

impl MinedObservation {
    pub fn pattern_strings(&self) -> impl Iterator<Item = &str> {
        self.patterns.iter().map(|p| p.symbols.as_str())
    }
}

/// Runs `algorithm` over the sequences of a single observation.
pub fn mine_sequences<S: AsRef<str> + Sync>(
    sequences: &[S],
    algorithm: Algorithm,
    params: &MiningParams,
) -> Result<Vec<Pattern>> {
    match algorithm {
        Algorithm::Lccspm => mine_closed_contiguous(sequences, &params.miner),
        Algorithm::AprioriClose => {
            let transactions = to_transactions(sequences)?;
            mine_closed_itemsets(&transactions, &params.miner)
        }
        Algorithm::SmpLcs => smp_extract(sequences, &params.clustering, params.miner.max_len),
    }
}

pub fn mine_observation(
    observation: &ObservationSet,
    algorithm: Algorithm,
    params: &MiningParams,
) -> Result<MinedObservation> {
    let patterns = mine_sequences(&observation.symbols(), algorithm, params)?;
    Ok(MinedObservation {
        observation_id: observation.id(),
        position: observation.position.clone(),
        algorithm,
        patterns,
    })
}

/// Mines every observation in parallel, preserving input order.
pub fn mine_all(
    observations: &[ObservationSet],
    algorithm: Algorithm,
    params: &MiningParams,
) -> Result<Vec<MinedObservation>> {
    params.miner.validate()?;
    params.clustering.validate()?;
    observations
        .par_iter()
        .map(|obs| mine_observation(obs, algorithm, params))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct PatternRow {
    observation_id: String,
    kind: PatternKind,
    pattern: String,
    support_count: usize,
    support_fraction: f64,
}

/// Writes the pattern CSV: `observation_id,kind,pattern,support_count,support_fraction`.
pub fn write_patterns_csv<W: Write>(out: W, mined: &[MinedObservation]) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(["observation_id", "kind", "pattern", "support_count", "support_fraction"])?;
    for obs in mined {
        for p in &obs.patterns {
            writer.serialize(PatternRow {
                observation_id: obs.observation_id.clone(),
                kind: p.kind,
                pattern: p.symbols.clone(),
                support_count: p.support_count,
                support_fraction: p.support_fraction,
            })?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Patterns grouped by observation id, as read from a pattern CSV.
#[derive(Clone, Debug, Default)]
pub struct PatternTable {
    pub kind: Option<PatternKind>,
    pub by_observation: BTreeMap<String, Vec<Pattern>>,
}

impl PatternTable {
    /// Attaches positions and fills in observations that mined nothing.
    ///
    /// `observations` is a list of `(observation_id, position)`; ids present in the
    /// table but not in the list are an error.
    pub fn into_mined(self, observations: &[(String, String)]) -> Result<Vec<MinedObservation>> {
        let kind = self.kind.ok_or(Error::EmptyInput("pattern file has no rows"))?;
        let mut by_obs = self.by_observation;
        let mut mined = Vec::with_capacity(observations.len());
        for (id, position) in observations {
            mined.push(MinedObservation {
                observation_id: id.clone(),
                position: position.clone(),
                algorithm: kind.algorithm(),
                patterns: by_obs.remove(id).unwrap_or_default(),
            });
        }
        if let Some(id) = by_obs.keys().next() {
            return Err(Error::Inconsistent(format!(
                "pattern file references unknown observation `{id}`"
            )));
        }
        Ok(mined)
    }
}

pub fn read_patterns_csv<R: Read>(input: R) -> Result<PatternTable> {
    let mut reader = csv::Reader::from_reader(input);
    let mut table = PatternTable::default();
    for row in reader.deserialize() {
        let row: PatternRow = row?;
        match table.kind {
            None => table.kind = Some(row.kind),
            Some(k) if k != row.kind => {
                return Err(Error::KindMismatch {
                    expected: k.to_string(),
                    found: row.kind.to_string(),
                })
            }
            _ => {}
        }
        table
            .by_observation
            .entry(row.observation_id)
            .or_default()
            .push(Pattern {
                kind: row.kind,
                symbols: row.pattern,
                support_count: row.support_count,
                support_fraction: row.support_fraction,
            });
    }
    Ok(table)
}
