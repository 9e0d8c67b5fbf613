//! Mines one synthetic observation with each algorithm.
//!
//! cargo run --release --example mine_patterns [min_support] [max_len]

use movepat::mining::{mine_observation, Algorithm, MiningParams};
use movepat::synth::{generate_cohort, SynthConfig};

fn main() -> movepat::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut params = MiningParams::default();
    if let Some(s) = args.first() {
        params.miner.min_support = s.parse().expect("min_support is a number");
    }
    if let Some(m) = args.get(1) {
        params.miner.max_len = m.parse().expect("max_len is an integer");
    }

    let cfg = SynthConfig {
        players_per_position: 1,
        matches_per_player: 1,
        ..SynthConfig::default()
    };
    let cohort = generate_cohort(&cfg, false)?;
    let obs = &cohort.observations[0];
    println!("{} ({}): {} sequences", obs.id(), obs.position, obs.sequences.len());

    for algorithm in Algorithm::ALL {
        let mined = mine_observation(obs, algorithm, &params)?;
        println!("\n{algorithm}: {} patterns", mined.patterns.len());
        for p in mined.patterns.iter().take(8) {
            println!("  {:<24} {:>3}  {:.2}", p.symbols, p.support_count, p.support_fraction);
        }
    }
    Ok(())
}
