//! Turns one second of 10 Hz samples into a movement sequence and spells
//! out each unit.
//!
//! cargo run --example discretize_fixture

use movepat::alphabet::{BandThresholds, MovementUnit};
use movepat::ingest::{build_sequences, InactiveConfig, TrackingSample, TrackingStream};

fn main() -> movepat::Result<()> {
    // (velocity m/s, acceleration m/s^2, turning angle deg)
    let rows = [
        (1.0, 0.5, 5.0),
        (1.0, 0.5, 20.0),
        (1.0, 0.0, 20.0),
        (1.0, 0.0, 5.0),
        (1.0, 0.5, 5.0),
        (1.0, 0.5, 60.0),
        (1.0, 0.0, 120.0),
        (1.0, -0.5, 120.0),
        (1.0, -0.5, 120.0),
        (1.0, -0.5, 20.0),
    ];
    let stream = TrackingStream {
        player_id: "p1".into(),
        match_id: "m1".into(),
        position: "hooker".into(),
        samples: rows
            .iter()
            .enumerate()
            .map(|(i, &(v, a, ta))| TrackingSample::new((14690 + i) as f64 / 10.0, v, a, ta))
            .collect(),
    };
    let obs = build_sequences(&stream, &BandThresholds::default(), &InactiveConfig::default())?;
    for seq in &obs.sequences {
        println!("{} starting at t={:.1}", seq.symbols, seq.start_t);
        for c in seq.symbols.chars() {
            println!(
                "  {c}  {}",
                MovementUnit::from_symbol(c).map(MovementUnit::name).unwrap_or_default()
            );
        }
    }
    Ok(())
}
