//! End-to-end run: discretize, mine with every algorithm, compare, featurize
//! and cross-validate every model, writing each stage's artifacts.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::BandThresholds;
use crate::analysis::{compare, position_overlap_by_label, union_patterns, Comparison, UniquePatternSet};
use crate::classify::{
    cross_validate, encode_labels, logreg_importance, CvConfig, CvReport, ImportanceRanking, Matrix, ModelKind,
    ModelSpec,
};
use crate::error::{Error, Result};
use crate::features::{featurize, FeatureMatrix};
use crate::ingest::{discretize_streams, read_tracking_csv, write_tracking_csv, InactiveConfig};
use crate::mining::{mine_all, write_patterns_csv, Algorithm, MinedObservation, MiningParams};
use crate::sequence::{write_jsonl, ObservationSet};
use crate::synth::{generate_cohort, SynthConfig};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "MOVEPAT_OUTPUT_DIR";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub thresholds: BandThresholds,
    pub inactive: InactiveConfig,
    pub mining: MiningParams,
    pub algorithms: Vec<Algorithm>,
    pub top_k: usize,
    pub models: Vec<ModelSpec>,
    pub cv: CvConfig,
    pub importance_k: usize,
    /// Overrides the synth and cross-validation seeds when set.
    pub seed: Option<u64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            thresholds: BandThresholds::default(),
            inactive: InactiveConfig::default(),
            mining: MiningParams::default(),
            algorithms: Algorithm::ALL.to_vec(),
            top_k: 50,
            models: ModelKind::ALL.into_iter().map(ModelSpec::new).collect(),
            cv: CvConfig::default(),
            importance_k: 20,
            seed: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.thresholds.validate()?;
        self.inactive.validate()?;
        self.mining.miner.validate()?;
        self.mining.clustering.validate()?;
        if self.algorithms.is_empty() || self.models.is_empty() {
            return Err(Error::config("at least one algorithm and one model are required"));
        }
        if self.top_k == 0 {
            return Err(Error::config("top_k must be at least 1"));
        }
        Ok(())
    }

    fn cv(&self) -> CvConfig {
        CvConfig {
            seed: self.seed.unwrap_or(self.cv.seed),
            ..self.cv.clone()
        }
    }
}

#[derive(Clone, Debug)]
pub enum PipelineInput {
    TrackingCsv(PathBuf),
    Synth(SynthConfig),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub unique_patterns: usize,
    pub patterns_file: String,
    pub matrix_file: String,
    /// Patterns mined only for the first position, only for the second, and shared.
    pub position_split: Option<PositionSplit>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositionSplit {
    pub position_a: String,
    pub position_b: String,
    pub only_a: usize,
    pub only_b: usize,
    pub shared: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub observations: usize,
    pub sequences: usize,
    pub positions: BTreeMap<String, usize>,
    pub algorithms: Vec<AlgorithmSummary>,
    pub jaccard: Vec<Comparison>,
    pub classification: Vec<CvReport>,
    pub importance: BTreeMap<Algorithm, ImportanceRanking>,
}

impl Summary {
    /// Best mean accuracy over models for `algorithm`.
    pub fn best_accuracy(&self, algorithm: Algorithm) -> Option<f64> {
        self.classification
            .iter()
            .filter(|r| r.algorithm == algorithm.as_str())
            .map(|r| r.mean.accuracy)
            .max_by(f64::total_cmp)
    }

    pub fn report(&self, algorithm: Algorithm, model: ModelKind) -> Option<&CvReport> {
        self.classification
            .iter()
            .find(|r| r.algorithm == algorithm.as_str() && r.model == model.as_str())
    }
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

/// Loads or generates the observation sets. Writes `tracking.csv` for
/// synthetic input.
pub fn load_observations(input: &PipelineInput, cfg: &PipelineConfig, out_dir: &Path) -> Result<Vec<ObservationSet>> {
    let streams = match input {
        PipelineInput::TrackingCsv(path) => read_tracking_csv(BufReader::new(File::open(path)?))?,
        PipelineInput::Synth(synth) => {
            let synth = SynthConfig {
                seed: cfg.seed.unwrap_or(synth.seed),
                ..synth.clone()
            };
            let cohort = generate_cohort(&synth, true).map_err(|e| e.in_stage("synth"))?;
            let mut w = create(out_dir, "tracking.csv")?;
            write_tracking_csv(&mut w, &cohort.streams)?;
            w.flush()?;
            cohort.streams
        }
    };
    if streams.is_empty() {
        return Err(Error::EmptyInput("tracking input has no rows"));
    }
    let observations = discretize_streams(&streams, &cfg.thresholds, &cfg.inactive)?;
    if observations.is_empty() {
        return Err(Error::EmptyInput("no observation has an active sequence"));
    }
    Ok(observations)
}

fn classify_matrix(
    matrix: &FeatureMatrix,
    algorithm: Algorithm,
    cfg: &PipelineConfig,
) -> Result<(Vec<CvReport>, ImportanceRanking)> {
    let (y, _) = encode_labels(&matrix.labels)?;
    let x = Matrix::from_features(matrix);
    let cv = cfg.cv();
    let reports = cfg
        .models
        .par_iter()
        .map(|spec| {
            let started = Instant::now();
            let r = cross_validate(spec, &x, &y, &cv, algorithm.as_str());
            log::debug!("{} on {algorithm} took {:.2?}", spec.kind, started.elapsed());
            r
        })
        .collect::<Result<Vec<_>>>()?;
    let logreg = cfg
        .models
        .iter()
        .find(|m| m.kind == ModelKind::LogReg)
        .cloned()
        .unwrap_or_else(|| ModelSpec::new(ModelKind::LogReg));
    let importance = logreg_importance(&x, &y, &matrix.columns, &logreg.logreg, cfg.importance_k)?;
    Ok((reports, importance))
}

/// Runs every stage and writes `summary.json` plus per-stage artifacts to
/// `out_dir`. Errors carry the failing stage; files already written are kept.
pub fn run_pipeline(input: &PipelineInput, cfg: &PipelineConfig, out_dir: &Path) -> Result<Summary> {
    cfg.validate()?;
    fs::create_dir_all(out_dir)?;

    let observations = load_observations(input, cfg, out_dir).map_err(|e| match e {
        e @ Error::Stage { .. } => e,
        e => e.in_stage("discretize"),
    })?;
    let mut w = create(out_dir, "sequences.jsonl")?;
    write_jsonl(&mut w, &observations)?;
    w.flush()?;

    let mut positions = BTreeMap::new();
    for o in &observations {
        *positions.entry(o.position.clone()).or_insert(0) += 1;
    }
    let labels: Vec<String> = positions.keys().cloned().collect();

    let mut mined: Vec<(Algorithm, Vec<MinedObservation>)> = Vec::new();
    for &algorithm in &cfg.algorithms {
        let started = Instant::now();
        let m = mine_all(&observations, algorithm, &cfg.mining).map_err(|e| e.in_stage("mine"))?;
        log::info!("mined {algorithm} in {:.2?}", started.elapsed());
        let mut w = create(out_dir, &format!("patterns_{algorithm}.csv"))?;
        write_patterns_csv(&mut w, &m)?;
        w.flush()?;
        mined.push((algorithm, m));
    }

    let compare_stage = |e: Error| e.in_stage("compare");
    let uniques: Vec<UniquePatternSet> = mined
        .iter()
        .map(|(_, m)| union_patterns(m))
        .collect::<Result<_>>()
        .map_err(compare_stage)?;
    let mut jaccard = Vec::new();
    for i in 0..uniques.len() {
        for j in i + 1..uniques.len() {
            jaccard.push(compare(&uniques[i], &uniques[j], cfg.top_k).map_err(compare_stage)?);
        }
    }

    let mut algorithms = Vec::new();
    let mut classification = Vec::new();
    let mut importance = BTreeMap::new();
    for ((algorithm, m), unique) in mined.iter().zip(&uniques) {
        let position_split = if labels.len() == 2 {
            let p = position_overlap_by_label(m, &labels[0], &labels[1]).map_err(compare_stage)?;
            Some(PositionSplit {
                position_a: p.position_a,
                position_b: p.position_b,
                only_a: p.only_a.len(),
                only_b: p.only_b.len(),
                shared: p.shared.len(),
            })
        } else {
            None
        };

        let matrix = featurize(unique, m).map_err(|e| e.in_stage("featurize"))?;
        let matrix_file = format!("matrix_{algorithm}.csv");
        let mut w = create(out_dir, &matrix_file)?;
        matrix.write_csv(&mut w)?;
        w.flush()?;

        let started = Instant::now();
        let (reports, ranking) = classify_matrix(&matrix, *algorithm, cfg).map_err(|e| e.in_stage("classify"))?;
        log::info!(
            "classified {algorithm} ({} columns) in {:.2?}",
            matrix.n_cols(),
            started.elapsed()
        );
        classification.extend(reports);
        importance.insert(*algorithm, ranking);
        algorithms.push(AlgorithmSummary {
            algorithm: *algorithm,
            unique_patterns: unique.len(),
            patterns_file: format!("patterns_{algorithm}.csv"),
            matrix_file,
            position_split,
        });
    }

    let summary = Summary {
        observations: observations.len(),
        sequences: observations.iter().map(|o| o.sequences.len()).sum(),
        positions,
        algorithms,
        jaccard,
        classification,
        importance,
    };
    let mut w = create(out_dir, "summary.json")?;
    serde_json::to_writer_pretty(&mut w, &summary)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(summary)
}
