//! Seeded synthetic cohorts: Markov-chain movement sequences with
//! position-specific motifs, optionally realized as raw tracking streams
//! that discretize back to the same sequences.

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{
    is_movement_symbol, symbol_index, AccelerationBand, MovementUnit, TurningBand, VelocityBand, ALPHABET,
};
use crate::error::{Error, Result};
use crate::ingest::{TrackingSample, TrackingStream, SAMPLE_PERIOD};
use crate::rng::rng_from;
use crate::sequence::{MovementSequence, ObservationSet};

const N: usize = 48;

/// Stationary samples inserted between consecutive sequences of a stream.
pub const GAP_SECONDS: f64 = 3.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Motif {
    pub pattern: String,
    /// Expected injections per 100 generated symbols.
    pub rate_per_100: f64,
}

impl Motif {
    pub fn new(pattern: &str, rate_per_100: f64) -> Self {
        Self {
            pattern: pattern.to_string(),
            rate_per_100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub players_per_position: usize,
    pub matches_per_player: usize,
    pub seed: u64,
    pub positions: Vec<String>,
    /// Row-stochastic 48x48 matrix in alphabet order; `None` uses
    /// [`default_chain`].
    pub base_chain: Option<Vec<Vec<f64>>>,
    pub motifs: BTreeMap<String, Vec<Motif>>,
    pub sequence_length_range: [usize; 2],
    pub sequences_per_observation_range: [usize; 2],
}

impl Default for SynthConfig {
    fn default() -> Self {
        let mut motifs = BTreeMap::new();
        motifs.insert("hooker".to_string(), vec![Motif::new("GGGGGGGGGGSSSSSSSS", 1.5)]);
        motifs.insert("winger".to_string(), vec![Motif::new("TSSTSTTSST", 1.5)]);
        Self {
            players_per_position: 20,
            matches_per_player: 10,
            seed: 42,
            positions: vec!["hooker".into(), "winger".into()],
            base_chain: None,
            motifs,
            sequence_length_range: [20, 60],
            sequences_per_observation_range: [30, 50],
        }
    }
}

impl SynthConfig {
    /// Same cohort shape with no injected motifs.
    pub fn without_motifs(mut self) -> Self {
        self.motifs.clear();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.positions.is_empty() || self.players_per_position == 0 || self.matches_per_player == 0 {
            return Err(Error::config("positions, players and matches must be non-empty"));
        }
        let [lo, hi] = self.sequence_length_range;
        if lo < 2 || lo > hi {
            return Err(Error::config(format!("invalid sequence_length_range [{lo}, {hi}]")));
        }
        let [lo_n, hi_n] = self.sequences_per_observation_range;
        if lo_n == 0 || lo_n > hi_n {
            return Err(Error::config(format!(
                "invalid sequences_per_observation_range [{lo_n}, {hi_n}]"
            )));
        }
        for (position, motifs) in &self.motifs {
            if !self.positions.contains(position) {
                return Err(Error::config(format!("motifs given for unknown position `{position}`")));
            }
            for m in motifs {
                if m.pattern.is_empty() || !m.pattern.chars().all(is_movement_symbol) {
                    return Err(Error::config(format!(
                        "motif `{}` contains symbols outside the alphabet",
                        m.pattern
                    )));
                }
                if !(m.rate_per_100 >= 0.0 && m.rate_per_100.is_finite()) {
                    return Err(Error::config(format!("motif `{}` has a negative rate", m.pattern)));
                }
                if m.pattern.len() > lo {
                    return Err(Error::config(format!(
                        "motif `{}` is longer than the shortest sequence ({lo})",
                        m.pattern
                    )));
                }
            }
        }
        if let Some(chain) = &self.base_chain {
            MarkovChain::new(chain.clone())?;
        }
        Ok(())
    }

    pub fn chain(&self) -> Result<MarkovChain> {
        match &self.base_chain {
            Some(m) => MarkovChain::new(m.clone()),
            None => Ok(default_chain()),
        }
    }
}

/// First-order Markov chain over the 48 movement units.
#[derive(Clone, Debug)]
pub struct MarkovChain {
    transitions: Vec<Vec<f64>>,
    rows: Vec<WeightedIndex<f64>>,
    initial: WeightedIndex<f64>,
    stationary: Vec<f64>,
}

impl MarkovChain {
    pub fn new(transitions: Vec<Vec<f64>>) -> Result<Self> {
        if transitions.len() != N || transitions.iter().any(|r| r.len() != N) {
            return Err(Error::config("transition matrix must be 48x48"));
        }
        for (i, row) in transitions.iter().enumerate() {
            if row.iter().any(|&p| !(p >= 0.0 && p.is_finite())) {
                return Err(Error::config(format!("row {i} has a negative or non-finite entry")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::config(format!("row {i} sums to {sum}")));
            }
        }
        let rows = transitions
            .iter()
            .map(|r| WeightedIndex::new(r).map_err(|e| Error::config(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let stationary = stationary_distribution(&transitions);
        let initial = WeightedIndex::new(&stationary).map_err(|e| Error::config(e.to_string()))?;
        Ok(Self {
            transitions,
            rows,
            initial,
            stationary,
        })
    }

    pub fn transitions(&self) -> &[Vec<f64>] {
        &self.transitions
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    /// A run of `len` symbols started from the stationary distribution.
    pub fn sample<R: Rng>(&self, len: usize, rng: &mut R) -> String {
        let mut out = String::with_capacity(len);
        if len == 0 {
            return out;
        }
        let mut state = self.initial.sample(rng);
        out.push(ALPHABET[state] as char);
        for _ in 1..len {
            state = self.rows[state].sample(rng);
            out.push(ALPHABET[state] as char);
        }
        out
    }
}

fn stationary_distribution(p: &[Vec<f64>]) -> Vec<f64> {
    let mut pi = vec![1.0 / N as f64; N];
    for _ in 0..100_000 {
        let mut next = vec![0.0; N];
        for (i, row) in p.iter().enumerate() {
            for (j, &pij) in row.iter().enumerate() {
                next[j] += pi[i] * pij;
            }
        }
        // damping keeps periodic chains from oscillating
        for (n, &old) in next.iter_mut().zip(&pi) {
            *n = 0.5 * (*n + old);
        }
        let delta: f64 = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
        pi = next;
        if delta < 1e-15 {
            break;
        }
    }
    let total: f64 = pi.iter().sum();
    pi.iter().map(|v| v / total).collect()
}

/// Self-transition 0.9, 0.08 spread over the other units of the same velocity
/// band, 0.02 spread over units of adjacent velocity bands.
pub fn default_chain() -> MarkovChain {
    let units: Vec<MovementUnit> = MovementUnit::all().collect();
    let band = |u: &MovementUnit| u.velocity as usize;
    let matrix = units
        .iter()
        .map(|from| {
            let vb = band(from);
            let adjacent = units.iter().filter(|u| band(u).abs_diff(vb) == 1).count() as f64;
            units
                .iter()
                .map(|to| {
                    if to == from {
                        0.9
                    } else if band(to) == vb {
                        0.08 / 11.0
                    } else if band(to).abs_diff(vb) == 1 {
                        0.02 / adjacent
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    MarkovChain::new(matrix).expect("default chain is row-stochastic")
}

fn interior_velocity(b: VelocityBand) -> (f64, f64) {
    match b {
        VelocityBand::Walk => (0.3, 1.5),
        VelocityBand::Jog => (1.9, 3.7),
        VelocityBand::Run => (4.1, 4.8),
        VelocityBand::Sprint => (5.2, 8.0),
    }
}

fn interior_acceleration(b: AccelerationBand) -> (f64, f64) {
    match b {
        AccelerationBand::Deceleration => (-2.5, -0.4),
        AccelerationBand::Neutral => (-0.15, 0.15),
        AccelerationBand::Acceleration => (0.4, 2.5),
    }
}

fn interior_turning(b: TurningBand) -> (f64, f64) {
    match b {
        TurningBand::Straight => (0.0, 9.0),
        TurningBand::Acute => (12.0, 43.0),
        TurningBand::Large => (47.0, 88.0),
        TurningBand::Backwards => (92.0, 178.0),
    }
}

/// A sample at time `t` whose signals lie well inside `symbol`'s bands.
pub fn realize_symbol<R: Rng>(symbol: char, t: f64, rng: &mut R) -> Option<TrackingSample> {
    let unit = MovementUnit::from_symbol(symbol)?;
    let draw = |(lo, hi): (f64, f64), rng: &mut R| rng.gen_range(lo..=hi);
    let v = draw(interior_velocity(unit.velocity), rng);
    let a = draw(interior_acceleration(unit.acceleration), rng);
    let ta = draw(interior_turning(unit.turning), rng);
    Some(TrackingSample::new(t, v, a, ta))
}

/// Overwrites random windows of `sequence` with motifs. The number of
/// injections per motif is `floor(l) + Bernoulli(frac(l))` with
/// `l = rate * len / 100`.
fn inject<R: Rng>(sequence: &mut [u8], motifs: &[Motif], rng: &mut R) {
    for m in motifs {
        let lambda = m.rate_per_100 * sequence.len() as f64 / 100.0;
        let mut count = lambda.floor() as usize;
        if rng.gen_bool(lambda.fract()) {
            count += 1;
        }
        let pattern = m.pattern.as_bytes();
        for _ in 0..count {
            let start = rng.gen_range(0..=sequence.len() - pattern.len());
            sequence[start..start + pattern.len()].copy_from_slice(pattern);
        }
    }
}

/// Sequences of one observation plus, optionally, its raw stream.
pub struct GeneratedObservation {
    pub observation: ObservationSet,
    pub stream: Option<TrackingStream>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Cohort {
    pub observations: Vec<ObservationSet>,
    /// Empty unless streams were requested.
    pub streams: Vec<TrackingStream>,
}

pub fn player_id(position: &str, player: usize) -> String {
    format!("{position}{:03}", player + 1)
}

pub fn match_id(m: usize) -> String {
    format!("m{:02}", m + 1)
}

fn generate_observation(
    cfg: &SynthConfig,
    chain: &MarkovChain,
    pos: usize,
    player: usize,
    game: usize,
    with_stream: bool,
) -> GeneratedObservation {
    let position = &cfg.positions[pos];
    let motifs = cfg.motifs.get(position).map(Vec::as_slice).unwrap_or(&[]);
    let mut rng = rng_from(cfg.seed, &[pos as u64, player as u64, game as u64]);
    let [lo_n, hi_n] = cfg.sequences_per_observation_range;
    let [lo, hi] = cfg.sequence_length_range;
    let n_sequences = rng.gen_range(lo_n..=hi_n);

    let gap = (GAP_SECONDS / SAMPLE_PERIOD).round() as usize;
    let mut samples = Vec::new();
    let mut sequences = Vec::with_capacity(n_sequences);
    let mut tick = 0usize;
    for s in 0..n_sequences {
        if s > 0 {
            if with_stream {
                samples.extend((0..gap).map(|k| TrackingSample::new((tick + k) as f64 * SAMPLE_PERIOD, 0.0, 0.0, 0.0)));
            }
            tick += gap;
        }
        let len = rng.gen_range(lo..=hi);
        let mut symbols = chain.sample(len, &mut rng).into_bytes();
        inject(&mut symbols, motifs, &mut rng);
        let symbols = String::from_utf8(symbols).expect("alphabet is ASCII");
        if with_stream {
            for (k, c) in symbols.chars().enumerate() {
                let t = (tick + k) as f64 * SAMPLE_PERIOD;
                samples.push(realize_symbol(c, t, &mut rng).expect("chain emits alphabet symbols"));
            }
        }
        sequences.push(MovementSequence::new(symbols, tick as f64 * SAMPLE_PERIOD));
        tick += len;
    }

    let observation = ObservationSet {
        player_id: player_id(position, player),
        match_id: match_id(game),
        position: position.clone(),
        sequences,
    };
    let stream = with_stream.then(|| TrackingStream {
        player_id: observation.player_id.clone(),
        match_id: observation.match_id.clone(),
        position: position.clone(),
        samples,
    });
    GeneratedObservation { observation, stream }
}

/// Generates every (position, player, match) observation in parallel from
/// per-observation seeds. Output is ordered by (player_id, match_id).
pub fn generate_cohort(cfg: &SynthConfig, with_streams: bool) -> Result<Cohort> {
    cfg.validate()?;
    let chain = cfg.chain()?;
    let jobs: Vec<(usize, usize, usize)> = (0..cfg.positions.len())
        .flat_map(|p| {
            (0..cfg.players_per_position).flat_map(move |pl| (0..cfg.matches_per_player).map(move |m| (p, pl, m)))
        })
        .collect();
    let mut generated: Vec<GeneratedObservation> = jobs
        .par_iter()
        .map(|&(p, pl, m)| generate_observation(cfg, &chain, p, pl, m, with_streams))
        .collect();
    generated.sort_by(|a, b| {
        (&a.observation.player_id, &a.observation.match_id).cmp(&(&b.observation.player_id, &b.observation.match_id))
    });
    let mut cohort = Cohort::default();
    for g in generated {
        cohort.observations.push(g.observation);
        cohort.streams.extend(g.stream);
    }
    Ok(cohort)
}

/// Empirical symbol frequencies of `text`, in alphabet order.
pub fn symbol_frequencies(text: &str) -> Vec<f64> {
    let mut counts = vec![0usize; N];
    for c in text.chars() {
        if let Some(i) = symbol_index(c) {
            counts[i] += 1;
        }
    }
    let total = counts.iter().sum::<usize>().max(1) as f64;
    counts.into_iter().map(|c| c as f64 / total).collect()
}
