//! Full run on a synthetic cohort: 20 hookers and 20 wingers over 10 matches.
//!
//! cargo run --release --example synthetic_pipeline [out_dir] [--no-motifs]

use std::time::Instant;

use movepat::mining::Algorithm;
use movepat::pipeline::{run_pipeline, PipelineConfig, PipelineInput};
use movepat::synth::SynthConfig;

fn main() -> movepat::Result<()> {
    env_logger::init();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .cloned()
        .unwrap_or_else(|| std::env::temp_dir().join("movepat-synthetic").display().to_string());
    let mut synth = SynthConfig::default();
    if args.iter().any(|a| a == "--no-motifs") {
        synth = synth.without_motifs();
    }

    let started = Instant::now();
    let summary = run_pipeline(&PipelineInput::Synth(synth), &PipelineConfig::default(), out.as_ref())?;
    println!(
        "{} observations, {} sequences in {:.1?}",
        summary.observations,
        summary.sequences,
        started.elapsed()
    );
    for a in &summary.algorithms {
        println!("{:>13}: {} unique patterns", a.algorithm.as_str(), a.unique_patterns);
    }
    for c in &summary.jaccard {
        println!("jaccard {} / {} = {:.4}", c.algorithm_a, c.algorithm_b, c.jaccard);
    }
    for r in &summary.classification {
        println!(
            "{:>13} {:>6}  acc {:6.2}%  f1 {:.3}",
            r.algorithm, r.model, r.mean.accuracy, r.mean.f1
        );
    }
    for algorithm in Algorithm::ALL {
        if let Some(top) = summary.importance.get(&algorithm) {
            let head: Vec<String> = top
                .0
                .iter()
                .take(5)
                .map(|e| format!("{} {:.2}", e.pattern, e.score))
                .collect();
            println!("top {algorithm}: {}", head.join(", "));
        }
    }
    println!("artifacts in {out}");
    Ok(())
}
