//! Generates a small cohort, checks the symbol frequencies against the
//! chain's stationary distribution and round-trips the raw samples through
//! the discretizer.
//!
//! cargo run --release --example synth_cohort [seed]

use movepat::alphabet::{BandThresholds, ALPHABET};
use movepat::ingest::{discretize_streams, InactiveConfig};
use movepat::synth::{generate_cohort, symbol_frequencies, SynthConfig};

fn main() -> movepat::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(42, |s| s.parse().expect("seed is an integer"));
    let cfg = SynthConfig {
        players_per_position: 3,
        matches_per_player: 2,
        seed,
        ..SynthConfig::default()
    };
    let cohort = generate_cohort(&cfg, true)?;
    for obs in &cohort.observations {
        let first = &obs.sequences[0].symbols;
        println!("{:<12} {:>3} sequences, first {}", obs.id(), obs.sequences.len(), first);
    }

    let chain = cfg.chain()?;
    let text: String = cohort.observations.iter().flat_map(|o| o.symbols()).collect();
    let empirical = symbol_frequencies(&text);
    println!("\nsymbol  stationary  observed");
    for (i, &b) in ALPHABET.iter().enumerate().filter(|(i, _)| i % 6 == 0) {
        println!(
            "  {}      {:.4}     {:.4}",
            b as char,
            chain.stationary()[i],
            empirical[i]
        );
    }

    let back = discretize_streams(&cohort.streams, &BandThresholds::default(), &InactiveConfig::default())?;
    println!(
        "\nraw samples rediscretize identically: {}",
        back == cohort.observations
    );
    Ok(())
}
