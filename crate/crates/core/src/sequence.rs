//! Movement sequences, per-observation sequence sets, and their JSON-lines form.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::SAMPLE_PERIOD;

/// Symbols of one active period, with the times of its first and last sample.
#[derive(Clone, Debug, PartialEq)]
pub struct MovementSequence {
    pub symbols: String,
    pub start_t: f64,
    pub end_t: f64,
}

impl MovementSequence {
    pub fn new(symbols: String, start_t: f64) -> Self {
        let end_t = start_t + SAMPLE_PERIOD * (symbols.len().saturating_sub(1)) as f64;
        Self {
            symbols,
            start_t,
            end_t,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// All movement sequences of one player in one match.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservationSet {
    pub player_id: String,
    pub match_id: String,
    pub position: String,
    pub sequences: Vec<MovementSequence>,
}

impl ObservationSet {
    /// Identifier used in pattern and matrix files: `player_id:match_id`.
    pub fn id(&self) -> String {
        observation_id(&self.player_id, &self.match_id)
    }

    pub fn symbols(&self) -> Vec<&str> {
        self.sequences.iter().map(|s| s.symbols.as_str()).collect()
    }
}

pub fn observation_id(player_id: &str, match_id: &str) -> String {
    format!("{player_id}:{match_id}")
}

#[derive(Serialize, Deserialize)]
struct ObservationRecord {
    player_id: String,
    match_id: String,
    position: String,
    sequences: Vec<String>,
}

/// Writes one JSON object per observation.
pub fn write_jsonl<W: Write>(mut out: W, observations: &[ObservationSet]) -> Result<()> {
    for obs in observations {
        let record = ObservationRecord {
            player_id: obs.player_id.clone(),
            match_id: obs.match_id.clone(),
            position: obs.position.clone(),
            sequences: obs.sequences.iter().map(|s| s.symbols.clone()).collect(),
        };
        serde_json::to_writer(&mut out, &record)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads observations written by [`write_jsonl`].
///
/// The file does not carry timing, so each sequence is given a relative
/// span starting at 0.
pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<ObservationSet>> {
    let mut observations = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ObservationRecord = serde_json::from_str(&line)?;
        if record.sequences.is_empty() {
            return Err(Error::Inconsistent(format!(
                "line {}: observation has no sequences",
                lineno + 1
            )));
        }
        observations.push(ObservationSet {
            player_id: record.player_id,
            match_id: record.match_id,
            position: record.position,
            sequences: record
                .sequences
                .into_iter()
                .map(|s| MovementSequence::new(s, 0.0))
                .collect(),
        });
    }
    Ok(observations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_layout() {
        let obs = ObservationSet {
            player_id: "p1".into(),
            match_id: "m1".into(),
            position: "hooker".into(),
            sequences: vec![MovementSequence::new("ijfe".into(), 10.0)],
        };
        let mut buf = Vec::new();
        write_jsonl(&mut buf, std::slice::from_ref(&obs)).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "{\"player_id\":\"p1\",\"match_id\":\"m1\",\"position\":\"hooker\",\"sequences\":[\"ijfe\"]}\n"
        );
        let back = read_jsonl(&buf[..]).unwrap();
        assert_eq!(back[0].symbols(), vec!["ijfe"]);
        assert_eq!(back[0].id(), "p1:m1");
    }

    #[test]
    fn span_matches_length() {
        let s = MovementSequence::new("abcde".into(), 3.0);
        assert!((s.end_t - s.start_t - 0.4).abs() < 1e-9);
    }
}
