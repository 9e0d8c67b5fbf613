//! Jaccard similarity and top-k overlap between the pattern unions of the
//! three miners, plus the hooker/winger split for LCCspm.
//!
//! cargo run --release --example compare_algorithms

use movepat::analysis::{compare, position_overlap_by_label, union_patterns};
use movepat::mining::{mine_all, Algorithm, MiningParams};
use movepat::synth::{generate_cohort, SynthConfig};

fn main() -> movepat::Result<()> {
    let cfg = SynthConfig {
        players_per_position: 5,
        matches_per_player: 3,
        ..SynthConfig::default()
    };
    let cohort = generate_cohort(&cfg, false)?;
    let params = MiningParams::default();

    let mut mined = Vec::new();
    for algorithm in Algorithm::ALL {
        mined.push((algorithm, mine_all(&cohort.observations, algorithm, &params)?));
    }
    let unions = mined
        .iter()
        .map(|(_, m)| union_patterns(m))
        .collect::<movepat::Result<Vec<_>>>()?;
    for i in 0..unions.len() {
        for j in i + 1..unions.len() {
            let c = compare(&unions[i], &unions[j], 10)?;
            println!(
                "{} ({}) vs {} ({}): jaccard {:.4}, {} shared in top 10",
                c.algorithm_a,
                c.size_a,
                c.algorithm_b,
                c.size_b,
                c.jaccard,
                c.most_frequent.len()
            );
        }
    }

    let split = position_overlap_by_label(&mined[0].1, "hooker", "winger")?;
    println!(
        "\nlccspm: {} hooker only, {} winger only, {} shared",
        split.only_a.len(),
        split.only_b.len(),
        split.shared.len()
    );
    for p in split.only_a.iter().take(5) {
        println!("  hooker {} in {} observations", p.pattern, p.frequency);
    }
    for p in split.only_b.iter().take(5) {
        println!("  winger {} in {} observations", p.pattern, p.frequency);
    }
    Ok(())
}
