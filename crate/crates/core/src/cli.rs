//! Command-line interface. Every subcommand reads and writes the same files
//! the pipeline produces.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::alphabet::BandThresholds;
use crate::analysis::{
    compare, position_overlap_by_label, positions, union_patterns, write_overlap_plot_csv, Comparison, PositionOverlap,
};
use crate::classify::{
    cross_validate, encode_labels, logreg_importance, CvConfig, CvReport, ImportanceRanking, Matrix, ModelKind,
    ModelSpec,
};
use crate::error::{Error, Result};
use crate::features::{featurize, FeatureMatrix};
use crate::ingest::{discretize_streams, read_tracking_csv, write_tracking_csv, InactiveConfig};
use crate::mining::{
    mine_all, read_patterns_csv, write_patterns_csv, Algorithm, ClusteringConfig, MinedObservation, MinerConfig,
    MiningParams, PatternTable,
};
use crate::pipeline::{run_pipeline, PipelineConfig, PipelineInput, OUTPUT_DIR_ENV};
use crate::sequence::{read_jsonl, write_jsonl, ObservationSet};
use crate::synth::{generate_cohort, SynthConfig};

#[derive(Debug, Parser)]
#[command(
    name = "movepat",
    version,
    about = "Movement-pattern mining and positional classification for 10 Hz tracking data"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tracking CSV to movement sequences (JSON lines).
    Discretize(DiscretizeArgs),
    /// Mine patterns from every observation's sequences.
    Mine(MineArgs),
    /// Jaccard similarity and top/bottom-k overlap of two pattern files.
    Compare(CompareArgs),
    /// Binary observation-by-pattern matrix.
    Featurize(FeaturizeArgs),
    /// Cross-validate one model on a feature matrix.
    Classify(ClassifyArgs),
    /// Generate a synthetic cohort.
    Synth(SynthArgs),
    /// Run every stage end to end.
    Pipeline(PipelineArgs),
}

#[derive(Debug, Args)]
pub struct DiscretizeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// JSON band thresholds (defaults to the standard bands).
    #[arg(long)]
    pub thresholds: Option<PathBuf>,
    /// Velocity (m/s) below which a sample may be inactive.
    #[arg(long, visible_alias = "v-min", default_value_t = 0.1)]
    pub inactive_vel: f64,
    /// Minimum duration (s) of a removed inactive run.
    #[arg(long, visible_alias = "min-dur", default_value_t = 2.0)]
    pub inactive_dur: f64,
    #[arg(long, default_value_t = 2)]
    pub min_segment_len: usize,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    /// Sequences JSONL.
    #[arg(long, visible_alias = "sequences")]
    pub input: PathBuf,
    /// lccspm, aprioriclose or smp-lcs.
    #[arg(long, visible_alias = "algorithm")]
    pub algo: Algorithm,
    #[arg(long, visible_alias = "min-support", default_value_t = 0.05)]
    pub support: f64,
    #[arg(long, visible_alias = "max-len", default_value_t = 20)]
    pub maxlen: usize,
    /// Cluster count for smp-lcs.
    #[arg(long, default_value_t = 25)]
    pub clusters: usize,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub top: usize,
    #[arg(long)]
    pub output: PathBuf,
    /// Sequences JSONL giving each observation's position; enables the
    /// per-position breakdown.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Plot-ready CSV of the overlap frequencies.
    #[arg(long)]
    pub plot_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturizeArgs {
    #[arg(long)]
    pub patterns: PathBuf,
    #[arg(long)]
    pub sequences: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// logreg, gnb, cart, rf or mlp.
    #[arg(long)]
    pub model: ModelKind,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    /// Fold shuffling seed.
    #[arg(long, default_value_t = 10)]
    pub seed: u64,
    #[arg(long)]
    pub report: PathBuf,
    /// Also rank the k largest logistic-regression weights (logreg only).
    #[arg(long)]
    pub importance: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// JSON synth configuration (defaults to the built-in two-position cohort).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out_sequences: PathBuf,
    /// Also write raw tracking samples.
    #[arg(long)]
    pub out_gps: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// Tracking CSV input.
    #[arg(long, conflicts_with = "synth", required_unless_present = "synth")]
    pub input: Option<PathBuf>,
    /// Synth JSON configuration, or `default` for the built-in cohort.
    #[arg(long)]
    pub synth: Option<String>,
    /// JSON pipeline configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, env = OUTPUT_DIR_ENV, default_value = "movepat-out")]
    pub output_dir: PathBuf,
    /// Overrides the synth and cross-validation seeds.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn read_sequences(path: &Path) -> Result<Vec<ObservationSet>> {
    read_jsonl(BufReader::new(File::open(path)?))
}

fn read_patterns(path: &Path) -> Result<PatternTable> {
    read_patterns_csv(BufReader::new(File::open(path)?))
}

fn id_positions(observations: &[ObservationSet]) -> Vec<(String, String)> {
    observations.iter().map(|o| (o.id(), o.position.clone())).collect()
}

fn discretize(args: &DiscretizeArgs) -> Result<()> {
    let thresholds = match &args.thresholds {
        Some(p) => read_json(p)?,
        None => BandThresholds::default(),
    };
    let inactive = InactiveConfig {
        v_min: args.inactive_vel,
        min_dur: args.inactive_dur,
        min_segment_len: args.min_segment_len,
    };
    let streams = read_tracking_csv(BufReader::new(File::open(&args.input)?))?;
    if streams.is_empty() {
        return Err(Error::EmptyInput("tracking input has no rows"));
    }
    let observations = discretize_streams(&streams, &thresholds, &inactive)?;
    write_jsonl(create(&args.output)?, &observations)?;
    log::info!("wrote {} observations", observations.len());
    Ok(())
}

fn mine(args: &MineArgs) -> Result<()> {
    let observations = read_sequences(&args.input)?;
    if observations.is_empty() {
        return Err(Error::EmptyInput("sequence file has no observations"));
    }
    let params = MiningParams {
        miner: MinerConfig::new(args.support, args.maxlen),
        clustering: ClusteringConfig { k: args.clusters },
    };
    let mined = mine_all(&observations, args.algo, &params)?;
    let mut w = create(&args.output)?;
    write_patterns_csv(&mut w, &mined)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CompareReport {
    #[serde(flatten)]
    comparison: Comparison,
    positions: Option<[PositionOverlap; 2]>,
}

fn mined_from(table: PatternTable, labels: Option<&[(String, String)]>) -> Result<Vec<MinedObservation>> {
    match labels {
        Some(l) => table.into_mined(l),
        None => {
            let ids: Vec<(String, String)> = table
                .by_observation
                .keys()
                .map(|k| (k.clone(), String::new()))
                .collect();
            table.into_mined(&ids)
        }
    }
}

fn compare_cmd(args: &CompareArgs) -> Result<()> {
    let labels = args
        .labels
        .as_deref()
        .map(read_sequences)
        .transpose()?
        .map(|o| id_positions(&o));
    let a = mined_from(read_patterns(&args.a)?, labels.as_deref())?;
    let b = mined_from(read_patterns(&args.b)?, labels.as_deref())?;
    let comparison = compare(&union_patterns(&a)?, &union_patterns(&b)?, args.top)?;
    let positions = if labels.is_some() {
        let names = positions(&a);
        if names.len() != 2 {
            return Err(Error::config(format!(
                "per-position breakdown needs exactly two positions, found {}",
                names.len()
            )));
        }
        Some([
            position_overlap_by_label(&a, &names[0], &names[1])?,
            position_overlap_by_label(&b, &names[0], &names[1])?,
        ])
    } else {
        None
    };
    if let Some(p) = &args.plot_csv {
        write_overlap_plot_csv(create(p)?, &comparison)?;
    }
    write_json(&args.output, &CompareReport { comparison, positions })
}

fn featurize_cmd(args: &FeaturizeArgs) -> Result<()> {
    let observations = read_sequences(&args.sequences)?;
    let mined = read_patterns(&args.patterns)?.into_mined(&id_positions(&observations))?;
    let matrix = featurize(&union_patterns(&mined)?, &mined)?;
    let mut w = create(&args.output)?;
    matrix.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ClassifyReport {
    #[serde(flatten)]
    report: CvReport,
    labels: [String; 2],
    importance: Option<ImportanceRanking>,
}

fn classify_cmd(args: &ClassifyArgs) -> Result<()> {
    if args.importance.is_some() && args.model != ModelKind::LogReg {
        return Err(Error::config("--importance needs --model logreg"));
    }
    let matrix = FeatureMatrix::read_csv(BufReader::new(File::open(&args.matrix)?))?;
    let (y, labels) = encode_labels(&matrix.labels)?;
    let x = Matrix::from_features(&matrix);
    let cv = CvConfig {
        n_splits: args.folds,
        shuffle: true,
        seed: args.seed,
    };
    let spec = ModelSpec::new(args.model);
    let name = args
        .matrix
        .file_stem()
        .map(|s| s.to_string_lossy().trim_start_matches("matrix_").to_string())
        .unwrap_or_default();
    let report = cross_validate(&spec, &x, &y, &cv, &name)?;
    let importance = args
        .importance
        .map(|k| logreg_importance(&x, &y, &matrix.columns, &spec.logreg, k))
        .transpose()?;
    write_json(
        &args.report,
        &ClassifyReport {
            report,
            labels,
            importance,
        },
    )
}

fn synth_cmd(args: &SynthArgs) -> Result<()> {
    let mut cfg: SynthConfig = match &args.config {
        Some(p) => read_json(p)?,
        None => SynthConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let cohort = generate_cohort(&cfg, args.out_gps.is_some())?;
    write_jsonl(create(&args.out_sequences)?, &cohort.observations)?;
    if let Some(p) = &args.out_gps {
        let mut w = create(p)?;
        write_tracking_csv(&mut w, &cohort.streams)?;
        w.flush()?;
    }
    Ok(())
}

fn pipeline_cmd(args: &PipelineArgs) -> Result<()> {
    let mut cfg: PipelineConfig = match &args.config {
        Some(p) => read_json(p)?,
        None => PipelineConfig::default(),
    };
    if args.seed.is_some() {
        cfg.seed = args.seed;
    }
    let input = match (&args.input, &args.synth) {
        (Some(p), _) => PipelineInput::TrackingCsv(p.clone()),
        (None, Some(s)) if s == "default" => PipelineInput::Synth(SynthConfig::default()),
        (None, Some(s)) => PipelineInput::Synth(read_json(Path::new(s))?),
        (None, None) => return Err(Error::config("either --input or --synth is required")),
    };
    let summary = run_pipeline(&input, &cfg, &args.output_dir)?;
    for r in &summary.classification {
        log::info!("{} {}: {:.2}%", r.algorithm, r.model, r.mean.accuracy);
    }
    Ok(())
}

impl Cli {
    pub fn run(&self) -> Result<()> {
        let run = || match &self.command {
            Command::Discretize(a) => discretize(a).map_err(|e| e.in_stage("discretize")),
            Command::Mine(a) => mine(a).map_err(|e| e.in_stage("mine")),
            Command::Compare(a) => compare_cmd(a).map_err(|e| e.in_stage("compare")),
            Command::Featurize(a) => featurize_cmd(a).map_err(|e| e.in_stage("featurize")),
            Command::Classify(a) => classify_cmd(a).map_err(|e| e.in_stage("classify")),
            Command::Synth(a) => synth_cmd(a).map_err(|e| e.in_stage("synth")),
            Command::Pipeline(a) => pipeline_cmd(a),
        };
        match self.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::config(e.to_string()))?
                .install(run),
            None => run(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_valid() {
        Cli::command().debug_assert();
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["movepat", "mine", "--bogus"]).is_err());
        assert!(Cli::try_parse_from([
            "movepat", "classify", "--matrix", "m.csv", "--model", "svm", "--report", "r.json"
        ])
        .is_err());
    }

    #[test]
    fn pipeline_needs_an_input() {
        assert!(Cli::try_parse_from(["movepat", "pipeline"]).is_err());
        assert!(Cli::try_parse_from(["movepat", "pipeline", "--input", "a.csv", "--synth", "default"]).is_err());
        let cli = Cli::try_parse_from([
            "movepat",
            "--threads",
            "2",
            "pipeline",
            "--synth",
            "default",
            "--output-dir",
            "x",
        ])
        .unwrap();
        assert_eq!(cli.threads, Some(2));
    }
}
