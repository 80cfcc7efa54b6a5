//! Acceptance criteria, one printed PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the verdict lines always
//! reach the test log. Any failing criterion makes the process exit 1.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use influencer_topics::analysis::stats::student_t_two_tailed;
use influencer_topics::analysis::{cosine_similarity, group_similarity, pearson_r, relative_difference};
use influencer_topics::corpus::{build_documents, RawTweet, StopwordList, TweetKind, MIN_TOKENS, MIN_TOKEN_LEN};
use influencer_topics::graph::{hits, Edge, EdgeKind, HitsParams, HitsScores, InteractionGraph};
use influencer_topics::partition::{leader_fraction, partition_by_authority};
use influencer_topics::pipeline::{run_pipeline, Manifest, Overrides, PipelineConfig, Stage};
use influencer_topics::synth::{best_match_cosines, planted_corpus, PlantedSpec};
use influencer_topics::topics::{train_lda, LdaConfig, TopicModel};
use proptest::prelude::*;
use proptest::test_runner::{Config as PropConfig, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took < budget, format!("took {took:.1?}, budget {budget:?}"))
}

fn graph_from_arcs(n: usize, arcs: &[(usize, usize)]) -> InteractionGraph {
    let name = |i: usize| format!("n{i:03}");
    InteractionGraph::from_edges(
        (0..n).map(name),
        arcs.iter().map(|&(s, t)| Edge {
            source: name(s),
            target: name(t),
            kind: EdgeKind::Comment,
        }),
    )
    .expect("valid graph")
}

/// Dominant eigenvector of `AᵀA` by dense power iteration, started from
/// `Aᵀ·1` (the authority vector after one HITS step from uniform hubs).
fn dense_authority_oracle(n: usize, arcs: &[(usize, usize)]) -> Vec<f64> {
    let mut a = vec![vec![0.0; n]; n];
    for &(s, t) in arcs {
        a[s][t] = 1.0;
    }
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = (0..n).map(|r| a[r][i] * a[r][j]).sum();
        }
    }
    let l1 = |v: &mut Vec<f64>| {
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= s);
    };
    let mut x: Vec<f64> = (0..n).map(|j| (0..n).map(|r| a[r][j]).sum()).collect();
    l1(&mut x);
    for _ in 0..1_000_000 {
        let mut y: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m[i][j] * x[j]).sum()).collect();
        l1(&mut y);
        let delta: f64 = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).sum();
        x = y;
        if delta < 1e-15 {
            break;
        }
    }
    x
}

fn authority_vec(scores: &HitsScores, n: usize) -> Vec<f64> {
    (0..n).map(|i| scores.authority[&format!("n{i:03}")]).collect()
}

/// The default cap of 200 iterations stops short on sparse graphs whose two
/// leading eigenvalues of `AᵀA` nearly coincide, so the oracle comparison
/// runs HITS to a tight fixed point instead.
const ORACLE_HITS: HitsParams = HitsParams {
    max_iter: 10_000,
    tol: 1e-12,
};

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut compared = 0;
    for &p in &[0.05, 0.2, 0.5] {
        for _ in 0..70 {
            let n = rng.random_range(2..=50);
            let arcs: Vec<(usize, usize)> = (0..n)
                .flat_map(|s| (0..n).map(move |t| (s, t)))
                .filter(|&(s, t)| s != t)
                .filter(|_| rng.random::<f64>() < p)
                .collect();
            let g = graph_from_arcs(n, &arcs);
            let scores = hits(&g, ORACLE_HITS).map_err(|e| e.to_string())?;
            check(scores.converged, format!("n = {n}, p = {p}: no convergence in {} iterations", scores.iterations))?;
            let got = authority_vec(&scores, n);
            let want = if arcs.is_empty() {
                vec![1.0 / n as f64; n]
            } else {
                dense_authority_oracle(n, &arcs)
            };
            let dist: f64 = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).sum();
            worst = worst.max(dist);
            compared += 1;
        }
    }
    check(worst <= 1e-6, format!("worst L1 distance {worst:e} > 1e-6"))?;
    within_budget(start, Duration::from_secs(10))?;
    Ok(format!(
        "{compared} random digraphs, worst L1 distance {worst:.2e} (max_iter {}, tol {:e})",
        ORACLE_HITS.max_iter, ORACLE_HITS.tol
    ))
}

fn criterion_2() -> Verdict {
    let single = hits(&graph_from_arcs(2, &[(1, 0)]), HitsParams::default()).map_err(|e| e.to_string())?;
    let a = authority_vec(&single, 2);
    check(a == [1.0, 0.0], format!("single edge authority {a:?}"))?;
    let complete: Vec<(usize, usize)> = (0..3).flat_map(|s| (0..3).map(move |t| (s, t))).filter(|(s, t)| s != t).collect();
    let tri = hits(&graph_from_arcs(3, &complete), HitsParams::default()).map_err(|e| e.to_string())?;
    let a = authority_vec(&tri, 3);
    check(a.iter().all(|x| (x - 1.0 / 3.0).abs() <= 1e-9), format!("complete 3-digraph authority {a:?}"))?;
    Ok("single edge {1, 0}; complete 3-digraph uniform 1/3".into())
}

fn scores_from(values: &[(String, f64)]) -> HitsScores {
    HitsScores {
        authority: values.iter().cloned().collect(),
        hub: values.iter().map(|(u, _)| (u.clone(), 0.0)).collect(),
        iterations: 0,
        converged: true,
    }
}

fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..1000 {
        let n = rng.random_range(1..=40);
        // Small integer levels produce plenty of ties; some zeros too.
        let tied = case % 2 == 0;
        let mut values: Vec<(String, f64)> = (0..n)
            .map(|i| {
                let a = if tied { rng.random_range(0..4) as f64 } else { rng.random::<f64>() };
                (format!("u{:02}", (i * 7) % 41), a)
            })
            .collect();
        values.sort_by(|a, b| a.0.cmp(&b.0));
        values.dedup_by(|a, b| a.0 == b.0);
        if values.iter().all(|(_, a)| *a == 0.0) {
            values[0].1 = 1.0;
        }
        let scores = scores_from(&values);
        let t = rng.random_range(0.05..0.999);
        let p = partition_by_authority(&scores, t).map_err(|e| e.to_string())?;

        // Prefix rule: leaders are the top of the (authority desc, id asc)
        // order, and the shortest such prefix reaching the threshold.
        let mut order = values.clone();
        order.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        let total: f64 = order.iter().map(|x| x.1).sum();
        let top: Vec<String> = order[..p.leaders.len()].iter().map(|x| x.0.clone()).collect();
        check(top == p.leaders, format!("case {case}: leaders are not the top prefix"))?;
        let share: f64 = order[..p.leaders.len()].iter().map(|x| x.1).sum::<f64>() / total;
        let without_last: f64 = order[..p.leaders.len() - 1].iter().map(|x| x.1).sum::<f64>() / total;
        check(share >= t - 1e-12 && without_last < t, format!("case {case}: prefix not minimal"))?;
        check(p.leaders.len() + p.majority.len() == values.len(), format!("case {case}: cover"))?;

        // Scale invariance; powers of two keep every partial sum exact.
        let c = 2f64.powi(rng.random_range(-20..20));
        let scaled: Vec<(String, f64)> = values.iter().map(|(u, a)| (u.clone(), a * c)).collect();
        let ps = partition_by_authority(&scores_from(&scaled), t).map_err(|e| e.to_string())?;
        check(ps.leaders == p.leaders, format!("case {case}: scaling by {c} changed leaders"))?;

        // Monotonicity: a lower threshold gives a prefix of the leaders.
        let lower = partition_by_authority(&scores, t * rng.random::<f64>().max(0.01)).map_err(|e| e.to_string())?;
        check(
            lower.leaders.len() <= p.leaders.len() && p.leaders.starts_with(&lower.leaders),
            format!("case {case}: lowering the threshold grew the leaders"),
        )?;

        // Tie determinism: input order cannot matter.
        let mut shuffled = values.clone();
        shuffled.shuffle(&mut rng);
        let pp = partition_by_authority(&scores_from(&shuffled), t).map_err(|e| e.to_string())?;
        check(pp == p, format!("case {case}: result depends on input order"))?;
    }

    let worked = scores_from(&[("a".into(), 0.5), ("b".into(), 0.3), ("c".into(), 0.2)]);
    let p = partition_by_authority(&worked, 0.8).map_err(|e| e.to_string())?;
    check(p.leaders == ["a", "b"], format!("worked example leaders {:?}", p.leaders))?;
    let frac = leader_fraction(2559, 355_139);
    check(frac == 0.0072, format!("2559/355139 gave {frac}"))?;
    Ok("1000 random score maps; worked example [a, b]; 2559/355139 = 0.72%".into())
}

fn criterion_4() -> Verdict {
    // (word, opinion-leader %, majority %, printed factor)
    const TABLE: [(&str, f64, f64, f64); 10] = [
        ("price", 0.85, 1.89, 1.22),
        ("buy", 0.39, 1.52, 2.87),
        ("sell", 0.19, 1.29, 5.74),
        ("profit", 0.12, 1.14, 8.17),
        ("invest", 0.04, 0.06, 0.53),
        ("core", 0.07, 0.02, -0.70),
        ("miner", 0.09, 0.04, -0.53),
        ("network", 0.16, 0.09, -0.46),
        ("node", 0.09, 0.03, -0.67),
        ("protocol", 0.05, 0.02, -0.67),
    ];
    let mut worst_rel = 0.0f64;
    for (word, op, maj, printed) in TABLE {
        let f = relative_difference(op, maj).map_err(|e| e.to_string())?;
        let abs = (f - printed).abs();
        let rel = abs / printed.abs();
        check(abs <= 0.1 || rel <= 0.05, format!("{word}: {f:.3} vs printed {printed}"))?;
        if abs > 0.1 {
            worst_rel = worst_rel.max(rel);
        }
    }
    Ok(format!("all 10 rows within tolerance (largest relative gap beyond abs 0.1: {:.1}%)", worst_rel * 100.0))
}

fn quartile_means(trace: &[f64]) -> (f64, f64) {
    let q = trace.len() / 4;
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    (mean(&trace[..q]), mean(&trace[trace.len() - q..]))
}

fn criterion_5(models: &mut Vec<TopicModel>) -> Verdict {
    let start = Instant::now();
    let corpus = planted_corpus(PlantedSpec::bars(7));
    let model = train_lda(&corpus.documents, &corpus.vocabulary, LdaConfig::new(5, 7)).map_err(|e| e.to_string())?;
    let cos = best_match_cosines(corpus.vocabulary.terms(), &corpus.phi_star, &model.vocabulary, &model.phi)
        .map_err(|e| e.to_string())?;
    let min = cos.iter().copied().fold(f64::INFINITY, f64::min);
    check(min >= 0.9, format!("best-match cosines {cos:?}"))?;
    let (first, last) = quartile_means(&model.log_likelihood_trace);
    check(last > first, format!("log-likelihood quartile means {first} -> {last}"))?;
    within_budget(start, Duration::from_secs(120))?;
    models.push(model);
    Ok(format!("min best-match cosine {min:.4}; log-likelihood quartiles {first:.0} -> {last:.0}"))
}

fn criterion_6(models: &mut Vec<TopicModel>) -> Verdict {
    let corpus = planted_corpus(PlantedSpec { docs: 200, ..PlantedSpec::bars(11) });
    let cfg = LdaConfig {
        iterations: 200,
        burn_in: 100,
        ..LdaConfig::new(4, 11)
    };
    let a = train_lda(&corpus.documents, &corpus.vocabulary, cfg).map_err(|e| e.to_string())?;
    let b = train_lda(&corpus.documents, &corpus.vocabulary, cfg).map_err(|e| e.to_string())?;
    let bytes = |m: &TopicModel| serde_json::to_vec(m).expect("serializable");
    check(bytes(&a) == bytes(&b), "same seed produced different model files")?;
    models.push(a);
    let mut rows = 0;
    for m in models.iter() {
        for row in m.phi.iter().chain(&m.theta) {
            let s: f64 = row.iter().sum();
            check((s - 1.0).abs() <= 1e-9, format!("row sums to {s}"))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} rows across {} models stochastic; repeated run bit-identical", models.len()))
}

fn criterion_7(models: &[TopicModel]) -> Verdict {
    let community = &models[0];
    let mut permuted = community.clone();
    permuted.phi.reverse();
    permuted.phi.rotate_left(2);
    let r = group_similarity(community, &permuted).map_err(|e| e.to_string())?;
    check(r.average == 1.0, format!("permuted self-similarity average {}", r.average))?;
    let id = cosine_similarity(&[0.1, 0.2, 0.7], &[0.1, 0.2, 0.7]).map_err(|e| e.to_string())?;
    let orth = cosine_similarity(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).map_err(|e| e.to_string())?;
    let hand = cosine_similarity(&[1.0, 1.0, 0.0], &[1.0, 0.0, 0.0]).map_err(|e| e.to_string())?;
    check(id == 1.0 && orth == 0.0, format!("identical {id}, orthogonal {orth}"))?;
    check((hand - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-9, format!("hand case {hand}"))?;
    Ok("permuted self-similarity exactly 1.0; cosine trivials hold".into())
}

/// Closed-form Student-t CDF for three degrees of freedom.
fn t3_cdf(t: f64) -> f64 {
    let s = 3f64.sqrt();
    0.5 + (t / (s * (1.0 + t * t / 3.0)) + (t / s).atan()) / std::f64::consts::PI
}

fn criterion_8() -> Verdict {
    let x: Vec<f64> = (0..12).map(f64::from).collect();
    let up: Vec<f64> = x.iter().map(|v| 3.0 * v - 2.0).collect();
    let down: Vec<f64> = x.iter().map(|v| -0.5 * v + 4.0).collect();
    let pu = pearson_r(&x, &up).map_err(|e| e.to_string())?;
    let pd = pearson_r(&x, &down).map_err(|e| e.to_string())?;
    check(pu.r == 1.0 && pd.r == -1.0, format!("linear cases r = {}, {}", pu.r, pd.r))?;

    let hand = pearson_r(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 1.0, 4.0, 3.0, 5.0]).map_err(|e| e.to_string())?;
    check((hand.r - 0.8).abs() <= 1e-12, format!("hand case r = {}", hand.r))?;
    let t = 0.8 * (3.0f64 / (1.0 - 0.64)).sqrt();
    let want = 2.0 * (1.0 - t3_cdf(t));
    check((hand.p_value - want).abs() <= 1e-10, format!("hand case p = {}, closed form {want}", hand.p_value))?;

    // Two-tailed critical values of Student's t.
    const TABLE: [(f64, f64, f64); 6] = [
        (3.0, 3.182_446_305, 0.05),
        (3.0, 5.840_909_310, 0.01),
        (10.0, 2.228_138_852, 0.05),
        (10.0, 3.169_272_673, 0.01),
        (30.0, 2.042_272_456, 0.05),
        (30.0, 2.749_995_654, 0.01),
    ];
    let mut worst = 0.0f64;
    for (df, t, p) in TABLE {
        let got = student_t_two_tailed(t, df);
        worst = worst.max((got - p).abs());
    }
    check(worst <= 1e-6, format!("tabulated p-values off by {worst:e}"))?;
    Ok(format!("r = ±1 exact; hand case r = 0.8; tabulated p-values within {worst:.1e}"))
}

fn bundled_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/synth/pipeline.toml")
}

fn read_dir_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .expect("output dir")
        .map(|e| e.expect("entry").path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect()
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let load = |out: &str| {
        let mut cfg = PipelineConfig::load(&bundled_config()).expect("bundled config");
        cfg.apply(&Overrides {
            output_dir: Some(tmp.path().join(out)),
            ..Overrides::default()
        });
        cfg
    };
    let one = run_pipeline(&load("one")).map_err(|e| e.to_string())?;
    let two = run_pipeline(&load("two")).map_err(|e| e.to_string())?;
    check(one.manifest.complete, "first run incomplete")?;
    check(one.manifest == two.manifest, "manifests differ between runs")?;

    let chained = tmp.path().join("chained");
    for stage in Stage::ALL {
        let status = Command::new(env!("CARGO_BIN_EXE_influencer-topics"))
            .arg(stage.name())
            .arg("--config")
            .arg(bundled_config())
            .arg("--out")
            .arg(&chained)
            .output()
            .map_err(|e| e.to_string())?;
        check(
            status.status.success(),
            format!("{} exited with {}: {}", stage.name(), status.status, String::from_utf8_lossy(&status.stderr)),
        )?;
    }
    let single = read_dir_files(&one.dir);
    let staged = read_dir_files(&chained);
    check(
        single.keys().eq(staged.keys()),
        format!("file sets differ: {:?} vs {:?}", single.keys(), staged.keys()),
    )?;
    for (name, bytes) in &single {
        check(staged[name] == *bytes, format!("{name} differs between single run and chained stages"))?;
    }
    let manifest = Manifest::read(&chained).map_err(|e| e.to_string())?;
    within_budget(start, Duration::from_secs(300))?;
    Ok(format!(
        "two runs share manifest hashes; {} chained stages reproduce all {} files",
        Stage::ALL.len(),
        manifest.files.len() + 1
    ))
}

fn text_strategy() -> impl Strategy<Value = String> {
    let piece = prop_oneof![
        3 => "[a-zA-Z]{1,9}",
        2 => "\\PC{0,12}",
        1 => "(https?://|www\\.)[a-z0-9./]{0,12}",
        1 => proptest::sample::select(vec!["the", "and", "RT", "café", "naïve", "über", "x2", "#btc", "@joe"]).prop_map(String::from),
        1 => "[ \t\n.,!?;:'\"0-9-]{1,3}",
    ];
    proptest::collection::vec(piece, 0..30).prop_map(|v| v.join(" "))
}

fn criterion_10() -> Verdict {
    let stop = StopwordList::bundled();
    let mut runner = TestRunner::new(PropConfig {
        cases: 512,
        failure_persistence: None,
        ..PropConfig::default()
    });
    let emitted = std::cell::Cell::new(0usize);
    let strategy = proptest::collection::vec(text_strategy(), 1..12);
    runner
        .run(&strategy, |texts| {
            let tweets: Vec<RawTweet> = texts
                .iter()
                .enumerate()
                .map(|(i, text)| RawTweet {
                    id: format!("t{i}"),
                    user_id: "u".into(),
                    created_at: "2018-01-01T00:00:00Z".parse().unwrap(),
                    text: text.clone(),
                    kind: TweetKind::Post,
                    parent_id: None,
                })
                .collect();
            let Ok(corpus) = build_documents(&tweets, &stop) else {
                return Ok(());
            };
            for doc in &corpus.documents {
                prop_assert!(doc.tokens.len() >= MIN_TOKENS);
                for t in &doc.tokens {
                    prop_assert!(t.len() >= MIN_TOKEN_LEN, "short token {t:?}");
                    prop_assert!(t.bytes().all(|b| b.is_ascii_lowercase()), "bad token {t:?}");
                    prop_assert!(!stop.contains(t));
                }
                emitted.set(emitted.get() + 1);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    check(emitted.get() > 0, "no documents were emitted, property is vacuous")?;
    Ok(format!("512 random corpora, {} emitted documents all conform", emitted.get()))
}

fn main() {
    let mut models = Vec::new();
    let mut results: Vec<(usize, &str, Verdict)> = vec![
        (1, "HITS matches dense eigenvector oracle", criterion_1()),
        (2, "closed-form HITS cases", criterion_2()),
        (3, "partition properties", criterion_3()),
        (4, "word-frequency factor formula", criterion_4()),
        (5, "LDA planted-topic recovery", criterion_5(&mut models)),
        (6, "row-stochastic, deterministic models", criterion_6(&mut models)),
    ];
    let c7 = if models.is_empty() {
        Err("no trained model available (criterion 5 failed)".into())
    } else {
        criterion_7(&models)
    };
    results.push((7, "similarity self-test", c7));
    results.push((8, "Pearson r and p-values", criterion_8()));
    results.push((9, "end-to-end determinism", criterion_9()));
    results.push((10, "preprocessing contract", criterion_10()));

    let mut failed = 0;
    for (n, name, verdict) in &results {
        match verdict {
            Ok(detail) => println!("[PASS] criterion {n:>2}: {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {n:>2}: {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
