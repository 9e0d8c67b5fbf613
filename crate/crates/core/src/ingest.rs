//! Tracking-data ingestion: CSV parsing, signal derivation, inactive-period
//! removal, and discretization into movement sequences.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{BandThresholds, MovementUnit};
use crate::error::{Error, Result};
use crate::sequence::{observation_id, MovementSequence, ObservationSet};

/// Sampling period of 10 Hz tracking data, in seconds.
pub const SAMPLE_PERIOD: f64 = 0.1;

/// Maximum deviation from [`SAMPLE_PERIOD`] before two samples count as a gap.
pub const GRID_TOLERANCE: f64 = 1e-6;

/// One 10 Hz sample. Acceleration and turning angle may be absent and derived.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrackingSample {
    pub t: f64,
    pub velocity: f64,
    pub acceleration: Option<f64>,
    pub heading: Option<f64>,
    pub turning_angle: Option<f64>,
}

impl TrackingSample {
    pub fn new(t: f64, velocity: f64, acceleration: f64, turning_angle: f64) -> Self {
        Self {
            t,
            velocity,
            acceleration: Some(acceleration),
            heading: None,
            turning_angle: Some(turning_angle),
        }
    }
}

/// All samples of one player in one match, sorted by time.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackingStream {
    pub player_id: String,
    pub match_id: String,
    pub position: String,
    pub samples: Vec<TrackingSample>,
}

/// Inactive-period removal and segment filtering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct InactiveConfig {
    /// Samples below this velocity (m/s) are inactive candidates.
    pub v_min: f64,
    /// Inactive runs at least this long (s) are removed.
    pub min_dur: f64,
    /// Segments shorter than this many symbols are dropped.
    pub min_segment_len: usize,
}

impl Default for InactiveConfig {
    fn default() -> Self {
        Self {
            v_min: 0.1,
            min_dur: 2.0,
            min_segment_len: 2,
        }
    }
}

impl InactiveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.v_min.is_finite() && self.min_dur.is_finite()) || self.min_dur < 0.0 {
            return Err(Error::config("inactive thresholds must be finite and non-negative"));
        }
        if self.min_segment_len == 0 {
            return Err(Error::config("min_segment_len must be at least 1"));
        }
        Ok(())
    }
}

fn on_grid(prev: f64, t: f64) -> bool {
    ((t - prev) - SAMPLE_PERIOD).abs() <= GRID_TOLERANCE
}

fn check_grid(samples: &[TrackingSample]) -> Result<()> {
    for w in samples.windows(2) {
        if !on_grid(w[0].t, w[1].t) {
            return Err(Error::Gap { t: w[1].t });
        }
    }
    Ok(())
}

/// Fills missing accelerations with backward finite differences of velocity.
/// The first sample gets 0.
pub fn derive_acceleration(samples: &mut [TrackingSample]) -> Result<()> {
    check_grid(samples)?;
    for i in 0..samples.len() {
        if samples[i].acceleration.is_none() {
            let a = if i == 0 {
                0.0
            } else {
                (samples[i].velocity - samples[i - 1].velocity) / SAMPLE_PERIOD
            };
            samples[i].acceleration = Some(a);
        }
    }
    Ok(())
}

/// Absolute heading change folded into [0, 180].
pub fn heading_change(from: f64, to: f64) -> f64 {
    let d = (to - from).rem_euclid(360.0);
    d.min(360.0 - d)
}

/// Fills missing turning angles from consecutive headings. The first sample gets 0.
pub fn derive_turning_angle(samples: &mut [TrackingSample]) -> Result<()> {
    for i in 0..samples.len() {
        if samples[i].turning_angle.is_some() {
            continue;
        }
        let t = samples[i].t;
        let missing = || Error::UnrecoverableInput {
            t,
            reason: "neither heading nor turning_angle is available".into(),
        };
        let heading = samples[i].heading.ok_or_else(missing)?;
        let ta = if i == 0 {
            0.0
        } else {
            let prev = samples[i - 1].heading.ok_or_else(missing)?;
            heading_change(prev, heading)
        };
        samples[i].turning_angle = Some(ta);
    }
    Ok(())
}

/// Maps one sample to its movement unit.
///
/// Negative velocities and turning angles outside [0, 180] are clamped with a warning.
pub fn discretize_sample(sample: &TrackingSample, thresholds: &BandThresholds) -> Result<MovementUnit> {
    let invalid = |reason: &str| Error::InvalidSample {
        t: sample.t,
        reason: reason.to_string(),
    };
    let a = sample.acceleration.ok_or_else(|| invalid("acceleration missing"))?;
    let ta = sample.turning_angle.ok_or_else(|| invalid("turning angle missing"))?;
    if !sample.velocity.is_finite() || !a.is_finite() || !ta.is_finite() {
        return Err(invalid("non-finite signal"));
    }
    let mut v = sample.velocity;
    if v < 0.0 {
        warn!("t = {}: negative velocity {v} clamped to 0", sample.t);
        v = 0.0;
    }
    let mut ta = ta;
    if !(0.0..=180.0).contains(&ta) {
        warn!("t = {}: turning angle {ta} clamped to [0, 180]", sample.t);
        ta = ta.clamp(0.0, 180.0);
    }
    Ok(thresholds.unit(v, a, ta))
}

/// Splits a sorted stream into gap-free chunks.
fn split_at_gaps(samples: &[TrackingSample]) -> Result<Vec<&[TrackingSample]>> {
    let mut chunks = Vec::new();
    let mut start = 0;
    for i in 1..samples.len() {
        let (prev, t) = (samples[i - 1].t, samples[i].t);
        if t <= prev || t.is_nan() {
            return Err(Error::Unsorted { prev, t });
        }
        if !on_grid(prev, t) {
            chunks.push(&samples[start..i]);
            start = i;
        }
    }
    if start < samples.len() {
        chunks.push(&samples[start..]);
    }
    Ok(chunks)
}

/// Half-open index ranges of `samples` that survive inactive-period removal.
fn active_ranges(samples: &[TrackingSample], cfg: &InactiveConfig) -> Vec<(usize, usize)> {
    let mut ranges = Vec::new();
    let mut seg_start = 0;
    let mut i = 0;
    while i < samples.len() {
        if samples[i].velocity < cfg.v_min {
            let run_start = i;
            while i < samples.len() && samples[i].velocity < cfg.v_min {
                i += 1;
            }
            let duration = (i - run_start) as f64 * SAMPLE_PERIOD;
            if duration >= cfg.min_dur - GRID_TOLERANCE {
                if run_start > seg_start {
                    ranges.push((seg_start, run_start));
                }
                seg_start = i;
            }
        } else {
            i += 1;
        }
    }
    if seg_start < samples.len() {
        ranges.push((seg_start, samples.len()));
    }
    ranges
}

/// Movement sequences of one stream, possibly none.
pub fn segment_stream(
    samples: &[TrackingSample],
    thresholds: &BandThresholds,
    cfg: &InactiveConfig,
) -> Result<Vec<MovementSequence>> {
    let mut sequences = Vec::new();
    for chunk in split_at_gaps(samples)? {
        let mut chunk = chunk.to_vec();
        derive_acceleration(&mut chunk)?;
        derive_turning_angle(&mut chunk)?;
        for (start, end) in active_ranges(&chunk, cfg) {
            if end - start < cfg.min_segment_len {
                continue;
            }
            let symbols = chunk[start..end]
                .iter()
                .map(|s| discretize_sample(s, thresholds).map(MovementUnit::symbol))
                .collect::<Result<String>>()?;
            sequences.push(MovementSequence::new(symbols, chunk[start].t));
        }
    }
    Ok(sequences)
}

/// Discretizes one player-match stream into its observation set.
pub fn build_sequences(
    stream: &TrackingStream,
    thresholds: &BandThresholds,
    cfg: &InactiveConfig,
) -> Result<ObservationSet> {
    let sequences = segment_stream(&stream.samples, thresholds, cfg)?;
    if sequences.is_empty() {
        return Err(Error::EmptyObservation(observation_id(
            &stream.player_id,
            &stream.match_id,
        )));
    }
    Ok(ObservationSet {
        player_id: stream.player_id.clone(),
        match_id: stream.match_id.clone(),
        position: stream.position.clone(),
        sequences,
    })
}

/// Discretizes many streams in parallel. Observations left empty by
/// filtering are skipped with a warning. Output is ordered by
/// (player_id, match_id).
pub fn discretize_streams(
    streams: &[TrackingStream],
    thresholds: &BandThresholds,
    cfg: &InactiveConfig,
) -> Result<Vec<ObservationSet>> {
    thresholds.validate()?;
    cfg.validate()?;
    let results: Vec<Result<ObservationSet>> = streams
        .par_iter()
        .map(|s| build_sequences(s, thresholds, cfg))
        .collect();
    let mut observations = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(obs) => observations.push(obs),
            Err(Error::EmptyObservation(id)) => {
                warn!("observation {id} has no active sequences; excluded")
            }
            Err(e) => return Err(e),
        }
    }
    observations.sort_by(|a, b| (&a.player_id, &a.match_id).cmp(&(&b.player_id, &b.match_id)));
    Ok(observations)
}

#[derive(Debug, Serialize, Deserialize)]
struct TrackingRow {
    player_id: String,
    match_id: String,
    position: String,
    t: f64,
    velocity: f64,
    #[serde(default)]
    acceleration: Option<f64>,
    #[serde(default)]
    heading: Option<f64>,
    #[serde(default)]
    turning_angle: Option<f64>,
}

/// Reads tracking CSV and groups rows into per-player-match streams sorted by time.
pub fn read_tracking_csv<R: Read>(input: R) -> Result<Vec<TrackingStream>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut groups: BTreeMap<(String, String), TrackingStream> = BTreeMap::new();
    for row in reader.deserialize() {
        let row: TrackingRow = row?;
        let key = (row.player_id.clone(), row.match_id.clone());
        let stream = groups.entry(key).or_insert_with(|| TrackingStream {
            player_id: row.player_id.clone(),
            match_id: row.match_id.clone(),
            position: row.position.clone(),
            samples: Vec::new(),
        });
        if stream.position != row.position {
            return Err(Error::Inconsistent(format!(
                "{} has conflicting positions `{}` and `{}`",
                observation_id(&row.player_id, &row.match_id),
                stream.position,
                row.position
            )));
        }
        stream.samples.push(TrackingSample {
            t: row.t,
            velocity: row.velocity,
            acceleration: row.acceleration,
            heading: row.heading,
            turning_angle: row.turning_angle,
        });
    }
    let mut streams: Vec<TrackingStream> = groups.into_values().collect();
    for s in &mut streams {
        s.samples.sort_by(|a, b| a.t.total_cmp(&b.t));
    }
    Ok(streams)
}

/// Writes streams in the tracking CSV layout, with all optional columns.
pub fn write_tracking_csv<W: Write>(out: W, streams: &[TrackingStream]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for stream in streams {
        for s in &stream.samples {
            writer.serialize(TrackingRow {
                player_id: stream.player_id.clone(),
                match_id: stream.match_id.clone(),
                position: stream.position.clone(),
                t: (s.t * 10.0).round() / 10.0,
                velocity: s.velocity,
                acceleration: s.acceleration,
                heading: s.heading,
                turning_angle: s.turning_angle,
            })?;
        }
    }
    writer.flush()?;
    Ok(())
}
