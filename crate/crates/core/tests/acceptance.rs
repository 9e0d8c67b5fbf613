//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use movepat::alphabet::{AccelerationBand, BandThresholds, MovementUnit, TurningBand, VelocityBand};
use movepat::analysis::{jaccard, overlap_topk, position_overlap, union_patterns, RankEnd};
use movepat::classify::logreg::smooth_loss_and_gradient;
use movepat::classify::mlp::Network;
use movepat::classify::{kfold_indices, Confusion, CvConfig, Matrix, Metrics, ModelKind};
use movepat::ingest::{build_sequences, InactiveConfig, TrackingSample, TrackingStream};
use movepat::mining::smp::cluster_lcs;
use movepat::mining::{
    cluster_sequences, lcs_pair, mine_closed_contiguous, mine_closed_itemsets, smp_extract, to_transactions, Algorithm,
    ClusteringConfig, MinedObservation, MinerConfig, Pattern, PatternKind,
};
use movepat::pipeline::{run_pipeline, PipelineConfig, PipelineInput};
use movepat::synth::SynthConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s as f64, || {
        format!("took {elapsed:.1?}, limit {limit_s} s")
    })
}

fn as_map(patterns: &[Pattern]) -> BTreeMap<String, usize> {
    patterns.iter().map(|p| (p.symbols.clone(), p.support_count)).collect()
}

fn contiguous_oracle() -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut patterns = 0;
    for case in 0..500 {
        let alphabet = common::alphabet(rng.gen_range(1..=5));
        let n = rng.gen_range(1..=10);
        let seqs: Vec<String> = (0..n)
            .map(|_| {
                let len = rng.gen_range(1..=15);
                common::random_string(&mut rng, &alphabet, len)
            })
            .collect();
        let max_len = rng.gen_range(1..=8);
        let threshold = rng.gen_range(1..=n);
        let cfg = MinerConfig::new(threshold as f64 / n as f64, max_len);
        let mined = as_map(&mine_closed_contiguous(&seqs, &cfg).map_err(|e| e.to_string())?);
        let expected = common::closed_contiguous(&seqs, threshold, max_len);
        ensure(mined == expected, || {
            format!("case {case}: {seqs:?} t={threshold} max_len={max_len}: got {mined:?}, want {expected:?}")
        })?;
        patterns += expected.len();
    }
    within(started.elapsed(), 60)?;
    Ok(format!("500 instances, {patterns} patterns, {:.1?}", started.elapsed()))
}

fn itemset_oracle() -> Check {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut patterns = 0;
    for case in 0..500 {
        let alphabet = common::alphabet(rng.gen_range(1..=8));
        let n = rng.gen_range(1..=12);
        let seqs: Vec<String> = (0..n)
            .map(|_| {
                let len = rng.gen_range(1..=10);
                common::random_string(&mut rng, &alphabet, len)
            })
            .collect();
        let max_len = rng.gen_range(1..=9);
        let threshold = rng.gen_range(1..=n);
        let cfg = MinerConfig::new(threshold as f64 / n as f64, max_len);
        let transactions = to_transactions(&seqs).map_err(|e| e.to_string())?;
        let mined = mine_closed_itemsets(&transactions, &cfg).map_err(|e| e.to_string())?;
        let sets: Vec<BTreeSet<char>> = seqs.iter().map(|s| common::transaction(s)).collect();
        let got = as_map(&mined);
        let expected = common::closed_itemsets(&sets, threshold, max_len);
        ensure(got == expected, || {
            format!("case {case}: {seqs:?} t={threshold} max_len={max_len}: got {got:?}, want {expected:?}")
        })?;
        patterns += expected.len();

        let unbounded = MinerConfig::new(threshold as f64 / n as f64, 48);
        let closed = mine_closed_itemsets(&transactions, &unbounded).map_err(|e| e.to_string())?;
        for (set, c) in common::frequent_itemsets(&sets, threshold) {
            let covering = closed
                .iter()
                .filter(|p| p.support_count == c && set.iter().all(|x| p.symbols.contains(*x)))
                .count();
            ensure(covering >= 1, || {
                format!("case {case}: {set:?} has no equal-support closure")
            })?;
        }
    }
    within(started.elapsed(), 60)?;
    Ok(format!("500 instances, {patterns} patterns, {:.1?}", started.elapsed()))
}

fn lcs_and_smp() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..1000 {
        let alphabet = common::alphabet(rng.gen_range(1..=4));
        let (lx, ly) = (rng.gen_range(0..=10), rng.gen_range(0..=10));
        let x = common::random_string(&mut rng, &alphabet, lx);
        let y = common::random_string(&mut rng, &alphabet, ly);
        let l = lcs_pair(&x, &y);
        ensure(common::subsequence_of(&l, &x) && common::subsequence_of(&l, &y), || {
            format!("pair {case}: {l:?} is not common to {x:?} and {y:?}")
        })?;
        let best = common::lcs_len_brute(&x, &y);
        ensure(l.len() == best, || {
            format!("pair {case}: {x:?} {y:?} gave {l:?}, optimum {best}")
        })?;
    }

    let mut checked = 0;
    for case in 0..100 {
        let alphabet = common::alphabet(rng.gen_range(2..=6));
        let centers: Vec<String> = (0..rng.gen_range(1..=4))
            .map(|_| common::random_string(&mut rng, &alphabet, 12))
            .collect();
        let seqs: Vec<String> = (0..rng.gen_range(4..=16))
            .map(|_| {
                let c = &centers[rng.gen_range(0..centers.len())];
                let mut s = String::new();
                for ch in c.chars() {
                    if rng.gen_bool(0.85) {
                        s.push(if rng.gen_bool(0.1) { alphabet[0] as char } else { ch });
                    }
                }
                s
            })
            .filter(|s: &String| !s.is_empty())
            .collect();
        if seqs.is_empty() {
            continue;
        }
        let cfg = ClusteringConfig { k: centers.len() };
        let max_len = 20;
        let clusters = cluster_sequences(&seqs, &cfg).map_err(|e| e.to_string())?;
        let extracted: BTreeSet<String> = smp_extract(&seqs, &cfg, max_len)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|p| p.symbols)
            .collect();
        let mut accounted = BTreeSet::new();
        for members in &clusters {
            let strings: Vec<&str> = members.iter().map(|&i| seqs[i].as_str()).collect();
            let l = cluster_lcs(&strings);
            if extracted.contains(&l) {
                for s in &strings {
                    ensure(common::subsequence_of(&l, s), || {
                        format!("instance {case}: {l:?} is not a subsequence of member {s:?}")
                    })?;
                }
                accounted.insert(l);
                checked += 1;
            }
        }
        ensure(accounted == extracted, || {
            format!("instance {case}: extracted {extracted:?} but cluster profiles {accounted:?}")
        })?;
    }
    Ok(format!("1000 pairs, {checked} cluster profiles over 100 instances"))
}

fn discretizer() -> Check {
    use AccelerationBand::*;
    use TurningBand::*;
    use VelocityBand::*;

    let accel = |b| match b {
        Acceleration => 0.5,
        Neutral => 0.0,
        Deceleration => -0.5,
    };
    let turn = |b| match b {
        Straight => 5.0,
        Acute => 20.0,
        Large => 60.0,
        Backwards => 120.0,
    };
    let rows = [
        (Acceleration, Straight),
        (Acceleration, Acute),
        (Neutral, Acute),
        (Neutral, Straight),
        (Acceleration, Straight),
        (Acceleration, Large),
        (Neutral, Backwards),
        (Deceleration, Backwards),
        (Deceleration, Backwards),
        (Deceleration, Acute),
    ];
    let stream = TrackingStream {
        player_id: "p1".into(),
        match_id: "m1".into(),
        position: "hooker".into(),
        samples: rows
            .iter()
            .enumerate()
            .map(|(i, &(a, t))| TrackingSample::new((14690 + i) as f64 / 10.0, 1.0, accel(a), turn(t)))
            .collect(),
    };
    let thresholds = BandThresholds::default();
    let obs = build_sequences(&stream, &thresholds, &InactiveConfig::default()).map_err(|e| e.to_string())?;
    let symbols: Vec<&str> = obs.symbols();
    ensure(symbols == ["ijfeikhddb"], || format!("fixture gave {symbols:?}"))?;

    for (v, band) in [(1.70, Jog), (3.90, Jog), (5.00, Sprint)] {
        let got = thresholds.velocity_band(v);
        ensure(got == band, || format!("v={v} gave {got:?}, want {band:?}"))?;
    }
    for (a, band) in [(-0.20, Deceleration), (0.20, Acceleration)] {
        let got = thresholds.acceleration_band(a);
        ensure(got == band, || format!("a={a} gave {got:?}, want {band:?}"))?;
    }
    for (ta, band) in [(10.0, Acute), (45.0, Large), (90.0, Backwards)] {
        let got = thresholds.turning_band(ta);
        ensure(got == band, || format!("ta={ta} gave {got:?}, want {band:?}"))?;
    }

    let anchors = [
        ('b', Walk, Deceleration, Acute),
        ('d', Walk, Deceleration, Backwards),
        ('e', Walk, Neutral, Straight),
        ('f', Walk, Neutral, Acute),
        ('h', Walk, Neutral, Backwards),
        ('i', Walk, Acceleration, Straight),
        ('j', Walk, Acceleration, Acute),
        ('k', Walk, Acceleration, Large),
        ('u', Jog, Acceleration, Straight),
        ('v', Jog, Acceleration, Acute),
        ('G', Run, Acceleration, Straight),
        ('H', Run, Acceleration, Acute),
        ('S', Sprint, Acceleration, Straight),
        ('T', Sprint, Acceleration, Acute),
    ];
    for &(c, v, a, t) in &anchors {
        let unit = MovementUnit::new(v, a, t);
        ensure(unit.symbol() == c && MovementUnit::from_symbol(c) == Some(unit), || {
            format!("{v:?}/{a:?}/{t:?} maps to {:?}, want {c:?}", unit.symbol())
        })?;
    }
    Ok(format!("fixture, 8 boundary values, {} anchors", anchors.len()))
}

fn mined(id: usize, position: &str, patterns: &BTreeSet<String>) -> MinedObservation {
    MinedObservation {
        observation_id: format!("p{id}:m1"),
        position: position.into(),
        algorithm: Algorithm::Lccspm,
        patterns: patterns
            .iter()
            .map(|p| Pattern::new(PatternKind::Contiguous, p.clone(), 1, 1))
            .collect(),
    }
}

fn overlap_algebra() -> Check {
    let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    let worked = jaccard(&set(&["ab", "ij", "fe"]), &set(&["ij", "fe", "uv", "qq"])).map_err(|e| e.to_string())?;
    ensure((worked - 0.4).abs() < 1e-12, || format!("worked example gave {worked}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alphabet = common::alphabet(4);
    let random_set = |rng: &mut ChaCha8Rng| -> BTreeSet<String> {
        (0..rng.gen_range(1..=10))
            .map(|_| {
                let len = rng.gen_range(1..=3);
                common::random_string(rng, &alphabet, len)
            })
            .collect()
    };
    for case in 0..500 {
        let x = random_set(&mut rng);
        let y = random_set(&mut rng);
        let xy = jaccard(&x, &y).map_err(|e| e.to_string())?;
        let yx = jaccard(&y, &x).map_err(|e| e.to_string())?;
        let inter = x.intersection(&y).count() as f64;
        let union = x.union(&y).count() as f64;
        ensure(xy == yx && (xy - inter / union).abs() < 1e-15, || {
            format!("case {case}: {xy} vs {yx}")
        })?;
        ensure(jaccard(&x, &x).ok() == Some(1.0), || format!("case {case}: identity"))?;
        let disjoint: BTreeSet<String> = y.iter().map(|p| format!("{p}z")).collect();
        ensure(jaccard(&x, &disjoint).ok() == Some(0.0), || {
            format!("case {case}: disjoint")
        })?;

        let groups: Vec<BTreeSet<String>> = (0..rng.gen_range(1..=6)).map(|_| random_set(&mut rng)).collect();
        let observations: Vec<MinedObservation> = groups
            .iter()
            .enumerate()
            .map(|(i, s)| mined(i, if rng.gen_bool(0.5) { "hooker" } else { "winger" }, s))
            .collect();
        let unique = union_patterns(&observations).map_err(|e| e.to_string())?;
        for k in 1..=12 {
            let top: Vec<String> = overlap_topk(&unique, &unique, k, RankEnd::Most)
                .into_iter()
                .map(|e| e.pattern)
                .collect();
            let expected: Vec<String> = unique
                .top_k(k, RankEnd::Most)
                .into_iter()
                .map(|(p, _)| p.to_string())
                .collect();
            ensure(top == expected, || {
                format!("case {case}: overlap_topk(A, A, {k}) differs from top-k")
            })?;

            // least end: same members, reported by descending frequency
            let bottom = overlap_topk(&unique, &unique, k, RankEnd::Least);
            let members: BTreeSet<&str> = bottom.iter().map(|e| e.pattern.as_str()).collect();
            let expected: BTreeSet<&str> = unique.top_k(k, RankEnd::Least).into_iter().map(|(p, _)| p).collect();
            ensure(
                members == expected && bottom.windows(2).all(|w| w[0].freq_a >= w[1].freq_a),
                || format!("case {case}: least-frequent overlap of A with itself at k={k}"),
            )?;
        }
        let (a, b): (Vec<&MinedObservation>, Vec<&MinedObservation>) =
            observations.iter().partition(|o| o.position == "hooker");
        let split = position_overlap("hooker", &a, "winger", &b);
        let only_a: BTreeSet<&str> = split.only_a.iter().map(|p| p.pattern.as_str()).collect();
        let only_b: BTreeSet<&str> = split.only_b.iter().map(|p| p.pattern.as_str()).collect();
        let shared: BTreeSet<&str> = split.shared.iter().map(|p| p.pattern.as_str()).collect();
        let parts = split.only_a.len() + split.only_b.len() + split.shared.len();
        let all: BTreeSet<String> = only_a
            .iter()
            .chain(&only_b)
            .chain(&shared)
            .map(|s| s.to_string())
            .collect();
        ensure(all.len() == parts && all == unique.patterns(), || {
            format!("case {case}: position split is not a partition of the union")
        })?;
    }
    Ok("worked example and 500 randomized cases".into())
}

fn relative_gap(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-3)
}

fn classifier_numerics() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (rows, cols) = (12, 5);
    let data: Vec<f64> = (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let x = Matrix::new(rows, cols, data).map_err(|e| e.to_string())?;
    let y: Vec<usize> = (0..rows).map(|r| r % 2).collect();

    let w: Vec<f64> = (0..cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (b, c) = (0.3, 0.7);
    let (_, gw, gb) = smooth_loss_and_gradient(&x, &y, &w, b, c);
    let h = 1e-5;
    let mut worst_lr: f64 = 0.0;
    for j in 0..=cols {
        let eval = |delta: f64| {
            let mut w = w.clone();
            let mut b = b;
            if j < cols {
                w[j] += delta;
            } else {
                b += delta;
            }
            smooth_loss_and_gradient(&x, &y, &w, b, c).0
        };
        let numeric = (eval(h) - eval(-h)) / (2.0 * h);
        let analytic = if j < cols { gw[j] } else { gb };
        worst_lr = worst_lr.max(relative_gap(analytic, numeric));
    }
    ensure(worst_lr <= 1e-5, || format!("logistic gradient off by {worst_lr:e}"))?;

    let net = Network::init(cols, 4, &mut rng);
    let all: Vec<usize> = (0..rows).collect();
    let (_, g) = net.loss_and_gradient(&x, &y, &all);
    let h = 1e-6;
    let mut worst_mlp: f64 = 0.0;
    let n_params = net.w1.len() + net.b1.len() + net.w2.len() + 1;
    for p in 0..n_params {
        let eval = |delta: f64| {
            let mut n = net.clone();
            let (w1, b1, w2) = (n.w1.len(), n.b1.len(), n.w2.len());
            match p {
                p if p < w1 => n.w1[p] += delta,
                p if p < w1 + b1 => n.b1[p - w1] += delta,
                p if p < w1 + b1 + w2 => n.w2[p - w1 - b1] += delta,
                _ => n.b2 += delta,
            }
            n.loss(&x, &y, &all)
        };
        let numeric = (eval(h) - eval(-h)) / (2.0 * h);
        let analytic = [g.w1.as_slice(), &g.b1, &g.w2, &[g.b2]].concat()[p];
        worst_mlp = worst_mlp.max(relative_gap(analytic, numeric));
    }
    ensure(worst_mlp <= 1e-4, || format!("network gradient off by {worst_mlp:e}"))?;

    let folds = kfold_indices(1036, &CvConfig::default()).map_err(|e| e.to_string())?;
    let mut sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ensure(sizes == [104, 104, 104, 104, 104, 104, 103, 103, 103, 103], || {
        format!("fold sizes {sizes:?}")
    })?;

    let mut cases = 0;
    for tn in 0..5 {
        for fp in 0..5 {
            for fn_ in 0..5 {
                for tp in 0..5 {
                    let c = Confusion([[tn, fp], [fn_, tp]]);
                    if c.total() == 0 {
                        continue;
                    }
                    let got = Metrics::from_confusion(&c);
                    let want = hand_metrics(tn, fp, fn_, tp);
                    ensure(
                        [got.accuracy, got.precision, got.recall, got.f1]
                            .iter()
                            .zip(&want)
                            .all(|(g, w)| (g - w).abs() < 1e-12),
                        || format!("{c:?}: got {got:?}, want {want:?}"),
                    )?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!(
        "logistic {worst_lr:.1e}, network {worst_mlp:.1e}, folds {sizes:?}, {cases} confusion matrices"
    ))
}

/// Accuracy in percent and support-weighted precision, recall and F1, with
/// undefined ratios counted as zero.
fn hand_metrics(tn: usize, fp: usize, fn_: usize, tp: usize) -> [f64; 4] {
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let f1 = |p: f64, r: f64| if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
    let total = (tn + fp + fn_ + tp) as f64;
    let (n0, n1) = ((tn + fp) as f64, (fn_ + tp) as f64);
    let (p0, r0) = (ratio(tn, tn + fn_), ratio(tn, tn + fp));
    let (p1, r1) = (ratio(tp, tp + fp), ratio(tp, tp + fn_));
    [
        100.0 * (tn + tp) as f64 / total,
        (n0 * p0 + n1 * p1) / total,
        (n0 * r0 + n1 * r1) / total,
        (n0 * f1(p0, r0) + n1 * f1(p1, r1)) / total,
    ]
}

fn end_to_end() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = PipelineConfig::default();

    let started = Instant::now();
    let synth = SynthConfig::default();
    let summary = run_pipeline(&PipelineInput::Synth(synth.clone()), &cfg, &dir.path().join("motifs"))
        .map_err(|e| e.to_string())?;
    let with_motifs = started.elapsed();
    let best = |alg| summary.best_accuracy(alg).unwrap_or(f64::NAN);
    let (lcc, itemset) = (best(Algorithm::Lccspm), best(Algorithm::AprioriClose));
    let mut failures = Vec::new();
    if lcc.is_nan() || lcc < 90.0 {
        failures.push(format!("best lccspm accuracy {lcc:.2} < 90"));
    }
    if !(lcc >= itemset && itemset >= 50.0) {
        failures.push(format!(
            "ordering lccspm {lcc:.2} >= aprioriclose {itemset:.2} >= 50 fails"
        ));
    }
    if let Err(e) = within(with_motifs, 300) {
        failures.push(format!("motif run {e}"));
    }

    let started = Instant::now();
    let summary = run_pipeline(
        &PipelineInput::Synth(synth.without_motifs()),
        &cfg,
        &dir.path().join("null"),
    )
    .map_err(|e| e.to_string())?;
    let without = started.elapsed();
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    for alg in Algorithm::ALL {
        for model in ModelKind::ALL {
            let acc = summary.report(alg, model).map_or(f64::NAN, |r| r.mean.accuracy);
            range = (range.0.min(acc), range.1.max(acc));
            if !(45.0..=55.0).contains(&acc) {
                failures.push(format!("no motifs: {alg}/{model} accuracy {acc:.2} outside 45..55"));
            }
        }
    }
    if let Err(e) = within(without, 300) {
        failures.push(format!("null run {e}"));
    }

    let detail = format!(
        "lccspm {lcc:.2}, aprioriclose {itemset:.2} ({with_motifs:.0?}); null range {:.2}..{:.2} ({without:.0?})",
        range.0, range.1
    );
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", failures.join("; ")))
    }
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let synth = serde_json::json!({
        "players_per_position": 6,
        "matches_per_player": 3,
        "sequences_per_observation_range": [21, 30],
    });
    let synth_path = dir.path().join("synth.json");
    fs::write(&synth_path, synth.to_string()).map_err(|e| e.to_string())?;
    let run = |threads: &str, name: &str| -> Result<Vec<u8>, String> {
        let out_dir = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_movepat"))
            .args(["--threads", threads, "pipeline", "--seed", "7", "--synth"])
            .arg(&synth_path)
            .arg("--output-dir")
            .arg(&out_dir)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            String::from_utf8_lossy(&out.stderr).into_owned()
        })?;
        fs::read(out_dir.join("summary.json")).map_err(|e| e.to_string())
    };
    let a = run("1", "a")?;
    let b = run("4", "b")?;
    let c = run("1", "c")?;
    ensure(a == b && a == c, || "summary.json differs between runs".into())?;
    Ok(format!("3 runs (--threads 1, 4, 1), {} identical bytes", a.len()))
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("contiguous miner matches brute force", contiguous_oracle),
        ("closed itemsets match lattice scan", itemset_oracle),
        ("LCS optimality and cluster profiles", lcs_and_smp),
        ("discretizer fixture, boundaries, anchors", discretizer),
        ("Jaccard and overlap algebra", overlap_algebra),
        ("classifier gradients, folds, metrics", classifier_numerics),
        ("synthetic end-to-end separability", end_to_end),
        ("byte-identical summaries across thread counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
