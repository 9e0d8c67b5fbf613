//! 10-fold cross-validation of every model on an LCCspm pattern matrix,
//! then the logistic-regression pattern ranking.
//!
//! cargo run --release --example classify_models

use movepat::analysis::union_patterns;
use movepat::classify::{cross_validate, encode_labels, logreg_importance, CvConfig, Matrix, ModelKind, ModelSpec};
use movepat::features::featurize;
use movepat::mining::{mine_all, Algorithm, MiningParams};
use movepat::synth::{generate_cohort, SynthConfig};

fn main() -> movepat::Result<()> {
    let cfg = SynthConfig {
        players_per_position: 10,
        matches_per_player: 4,
        ..SynthConfig::default()
    };
    let cohort = generate_cohort(&cfg, false)?;
    let mined = mine_all(&cohort.observations, Algorithm::Lccspm, &MiningParams::default())?;
    let matrix = featurize(&union_patterns(&mined)?, &mined)?;
    println!("{} rows x {} patterns", matrix.n_rows(), matrix.n_cols());

    let (y, _) = encode_labels(&matrix.labels)?;
    let x = Matrix::from_features(&matrix);
    for kind in ModelKind::ALL {
        let report = cross_validate(&ModelSpec::new(kind), &x, &y, &CvConfig::default(), "lccspm")?;
        let m = report.mean;
        println!(
            "{:>6}  acc {:6.2}%  precision {:.3}  recall {:.3}  f1 {:.3}",
            kind.as_str(),
            m.accuracy,
            m.precision,
            m.recall,
            m.f1
        );
    }

    let spec = ModelSpec::new(ModelKind::LogReg);
    let ranking = logreg_importance(&x, &y, &matrix.columns, &spec.logreg, 10)?;
    println!("\nlargest |weight| patterns");
    for e in &ranking.0 {
        println!("  {:<22} {:.3}", e.pattern, e.score);
    }
    Ok(())
}
