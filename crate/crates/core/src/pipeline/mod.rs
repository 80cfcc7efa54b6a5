//! Staged execution from a config file to a report bundle.
//!
//! Every stage reads the artifacts of earlier stages from the output
//! directory, writes its own, and refreshes `manifest.json`. Running the
//! stages one by one therefore gives the same bundle as [`run_pipeline`].

mod artifact;
mod config;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use log::{info, warn};
use serde::{Deserialize, Serialize};

pub use artifact::{FileEntry, Manifest, MANIFEST, SCHEMA_VERSION};
pub use config::{
    default_windows, AnalysisConfig, DateBounds, HitsConfig, InputConfig, LdaSection, Overrides,
    PartitionConfig, PipelineConfig,
};

use self::artifact::{list_files, read_json, write_bytes, write_json, write_manifest};
use crate::analysis::{
    group_similarity, min_max_scale, relative_difference, topic_weight_series, windowed_correlation,
    DateWindow, PriceSeries, SimilarityReport,
};
use crate::corpus::{build_documents, ingest, word_frequencies, Corpus, IngestReport, RawTweet};
use crate::graph::{build_graph, export_gexf, hits, write_scores_csv, GraphStats, HitsScores, InteractionGraph};
use crate::partition::{
    authority_distribution, partition_by_authority, partition_stats, rank_table, Partition, PartitionStats,
};
use crate::plot::{bar_chart, line_chart, Series, YScale};
use crate::topics::{train_lda, TopicModel};
use crate::{Error, Result};

/// Echo of the effective config, written next to the manifest.
pub const CONFIG_ECHO: &str = "config.toml";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Ingest,
    Preprocess,
    Graph,
    Hits,
    Partition,
    Lda,
    Similarity,
    Frequencies,
    Correlate,
    ExportGexf,
}

impl Stage {
    pub const ALL: [Stage; 10] = [
        Stage::Ingest,
        Stage::Preprocess,
        Stage::Graph,
        Stage::Hits,
        Stage::Partition,
        Stage::Lda,
        Stage::Similarity,
        Stage::Frequencies,
        Stage::Correlate,
        Stage::ExportGexf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Ingest => "ingest",
            Stage::Preprocess => "preprocess",
            Stage::Graph => "graph",
            Stage::Hits => "hits",
            Stage::Partition => "partition",
            Stage::Lda => "lda",
            Stage::Similarity => "similarity",
            Stage::Frequencies => "frequencies",
            Stage::Correlate => "correlate",
            Stage::ExportGexf => "export-gexf",
        }
    }

    /// Files this stage writes, besides the config echo and manifest.
    pub fn outputs(self) -> &'static [&'static str] {
        match self {
            Stage::Ingest => &[INGEST_REPORT, TWEETS],
            Stage::Preprocess => &[DOCUMENTS],
            Stage::Graph => &[GRAPH, "graph_stats.json"],
            Stage::Hits => &[HITS],
            Stage::Partition => &[
                PARTITION,
                "partition_stats.json",
                "partition.csv",
                "authority_distribution.csv",
                "authority_distribution.svg",
                "scores.csv",
            ],
            Stage::Lda => &[
                "model_community.json",
                "model_leaders.json",
                "model_majority.json",
                "top_words_community.csv",
                "top_words_leaders.csv",
                "top_words_majority.csv",
            ],
            Stage::Similarity => &["similarity.json", "similarity.csv", "similarity.svg"],
            Stage::Frequencies => &["word_frequencies.csv", "word_frequencies.json"],
            Stage::Correlate => &["topic_series.csv", "correlation.csv", "correlation.json", "price_topics.svg"],
            Stage::ExportGexf => &["network.gexf"],
        }
    }

    fn applies(self, cfg: &PipelineConfig) -> bool {
        self != Stage::Correlate || cfg.input.prices.is_some()
    }
}

impl std::str::FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown stage {s:?}"))
    }
}

const INGEST_REPORT: &str = "ingest_report.json";
const TWEETS: &str = "tweets.json";
const DOCUMENTS: &str = "documents.json";
const GRAPH: &str = "graph.json";
const HITS: &str = "hits.json";
const PARTITION: &str = "partition.json";

/// Model groups, in output order.
pub const GROUPS: [&str; 3] = ["community", "leaders", "majority"];

fn model_file(group: &str) -> String {
    format!("model_{group}.json")
}

/// The output directory after a run, with its manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub dir: PathBuf,
    pub manifest: Manifest,
}

/// Runs every stage in order. Correlation is skipped when no price file
/// is configured.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<ReportBundle> {
    cfg.validate()?;
    let mut manifest = None;
    for stage in Stage::ALL {
        if stage.applies(cfg) {
            manifest = Some(run_stage(stage, cfg)?);
        } else {
            info!("skipping {}: no price file configured", stage.name());
        }
    }
    Ok(ReportBundle {
        dir: cfg.output_dir(),
        manifest: manifest.expect("at least one stage ran"),
    })
}

/// Runs one stage against the artifacts already in the output directory,
/// then rewrites the manifest. Failures are recorded in the manifest too.
pub fn run_stage(stage: Stage, cfg: &PipelineConfig) -> Result<Manifest> {
    cfg.validate()?;
    let dir = cfg.output_dir();
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    info!("stage {}", stage.name());
    let outcome = match stage {
        Stage::Ingest => stage_ingest(cfg, &dir),
        Stage::Preprocess => stage_preprocess(cfg, &dir),
        Stage::Graph => stage_graph(&dir),
        Stage::Hits => stage_hits(cfg, &dir),
        Stage::Partition => stage_partition(cfg, &dir),
        Stage::Lda => stage_lda(cfg, &dir),
        Stage::Similarity => stage_similarity(&dir),
        Stage::Frequencies => stage_frequencies(cfg, &dir),
        Stage::Correlate => stage_correlate(cfg, &dir),
        Stage::ExportGexf => stage_export(&dir),
    };
    let echo = cfg.echo();
    write_bytes(&dir, CONFIG_ECHO, echo.to_toml()?.as_bytes())?;
    let failure = outcome.as_ref().err().map(|e| e.to_string());
    let complete = failure.is_none()
        && Stage::ALL
            .into_iter()
            .filter(|s| s.applies(cfg))
            .flat_map(|s| s.outputs())
            .all(|f| dir.join(f).is_file());
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION.into(),
        complete,
        failed_stage: failure.as_ref().map(|_| stage.name().to_string()),
        error: failure,
        config: echo,
        files: list_files(&dir)?,
    };
    write_manifest(&dir, &manifest)?;
    match outcome {
        Ok(()) => Ok(manifest),
        Err(source) => Err(Error::Stage {
            stage: stage.name(),
            source: Box::new(source),
        }),
    }
}

#[derive(Serialize, Deserialize)]
struct IngestSummary {
    #[serde(flatten)]
    report: IngestReport,
    outside_date_bounds: usize,
}

#[derive(Serialize, Deserialize)]
struct TweetsArtifact {
    tweets: Vec<RawTweet>,
}

fn stage_ingest(cfg: &PipelineConfig, dir: &Path) -> Result<()> {
    let path = cfg
        .input
        .tweets
        .as_ref()
        .ok_or_else(|| Error::Config("input.tweets is not set".into()))?;
    let ingested = ingest(path, cfg.input.format)?;
    let before = ingested.tweets.len();
    let tweets: Vec<RawTweet> = ingested
        .tweets
        .into_iter()
        .filter(|t| cfg.dates.contains(t.created_at.date_naive()))
        .collect();
    let summary = IngestSummary {
        report: ingested.report,
        outside_date_bounds: before - tweets.len(),
    };
    info!(
        "ingested {} tweets ({} rejected, {} outside date bounds)",
        tweets.len(),
        summary.report.rejected,
        summary.outside_date_bounds
    );
    write_json(dir, INGEST_REPORT, &summary)?;
    write_json(dir, TWEETS, &TweetsArtifact { tweets })
}

fn load_tweets(dir: &Path) -> Result<Vec<RawTweet>> {
    Ok(read_json::<TweetsArtifact>(dir, TWEETS, "ingest")?.tweets)
}

fn stage_preprocess(cfg: &PipelineConfig, dir: &Path) -> Result<()> {
    let tweets = load_tweets(dir)?;
    let corpus = build_documents(&tweets, &cfg.stopwords()?)?;
    info!(
        "{} documents over {} terms",
        corpus.documents.len(),
        corpus.vocabulary.len()
    );
    write_json(dir, DOCUMENTS, &corpus)
}

fn stage_graph(dir: &Path) -> Result<()> {
    let graph = build_graph(&load_tweets(dir)?);
    let stats: GraphStats = graph.stats();
    info!("graph: {} nodes, {} edges", stats.nodes, stats.edges);
    write_json(dir, GRAPH, &graph)?;
    write_json(dir, "graph_stats.json", &stats)
}

fn stage_hits(cfg: &PipelineConfig, dir: &Path) -> Result<()> {
    let graph: InteractionGraph = read_json(dir, GRAPH, "graph")?;
    let scores = hits(&graph, cfg.hits.into())?;
    if !scores.converged {
        warn!("HITS stopped at max_iter = {} before converging", cfg.hits.max_iter);
    }
    write_json(dir, HITS, &scores)
}

fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn stage_partition(cfg: &PipelineConfig, dir: &Path) -> Result<()> {
    let graph: InteractionGraph = read_json(dir, GRAPH, "graph")?;
    let scores: HitsScores = read_json(dir, HITS, "hits")?;
    let partition = partition_by_authority(&scores, cfg.partition.threshold)?;
    let stats: PartitionStats = partition_stats(&partition, &scores);
    info!(
        "{} opinion leaders ({:.2}% of users) hold {:.2}% of authority",
        stats.n_leaders,
        stats.leader_fraction * 100.0,
        stats.leader_authority_share * 100.0
    );
    write_json(dir, PARTITION, &partition)?;
    write_json(dir, "partition_stats.json", &stats)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "user_id", "authority", "cumulative_share", "group"])?;
    for row in rank_table(&scores, &partition) {
        w.write_record([
            row.rank.to_string(),
            row.user_id,
            fmt_f64(row.authority),
            fmt_f64(row.cumulative_share),
            row.group.as_str().to_string(),
        ])?;
    }
    write_bytes(dir, "partition.csv", &csv_bytes(w)?)?;

    let dist = authority_distribution(&scores);
    let mut text = String::from("rank,authority,authority_log_floor\n");
    for (&(rank, a), &(_, floor)) in dist.linear.iter().zip(&dist.log_floor) {
        let _ = writeln!(text, "{rank},{},{}", fmt_f64(a), fmt_f64(floor));
    }
    write_bytes(dir, "authority_distribution.csv", text.as_bytes())?;
    let series = [Series::new(
        "authority",
        dist.linear.iter().map(|&(r, a)| (r as f64, a)).collect(),
    )];
    let svg = line_chart(
        "Authority by rank (log scale)",
        "rank",
        "authority",
        &series,
        YScale::Log,
        &|x| format!("{x:.0}"),
    );
    write_bytes(dir, "authority_distribution.svg", svg.as_bytes())?;

    let mut buf = Vec::new();
    write_scores_csv(&mut buf, &graph, &scores, &partition)?;
    write_bytes(dir, "scores.csv", &buf)
}

fn csv_bytes(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv buffer: {e}")))
}

/// Documents of the community, the leaders and the majority, in that order.
fn group_corpora(corpus: &Corpus, partition: &Partition) -> [Vec<crate::corpus::Document>; 3] {
    let leaders = partition.leader_set();
    [
        corpus.documents.clone(),
        corpus.documents_by(|u| leaders.contains(u)),
        corpus.documents_by(|u| partition.majority.contains(u)),
    ]
}

fn stage_lda(cfg: &PipelineConfig, dir: &Path) -> Result<()> {
    let corpus: Corpus = read_json(dir, DOCUMENTS, "preprocess")?;
    let partition: Partition = read_json(dir, PARTITION, "partition")?;
    let corpora = group_corpora(&corpus, &partition);
    for (group, docs) in GROUPS.iter().zip(&corpora) {
        if docs.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "the {group} group has no documents; adjust partition.threshold"
            )));
        }
    }
    let lda = cfg.lda_config();
    let models: Vec<Result<TopicModel>> = std::thread::scope(|s| {
        let handles: Vec<_> = corpora
            .iter()
            .map(|docs| s.spawn(|| train_lda(docs, &corpus.vocabulary, lda)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("LDA thread panicked"))
            .collect()
    });
    for (group, model) in GROUPS.iter().zip(models) {
        let model = model?;
        info!("trained {group} model on {} documents", model.theta.len());
        write_json(dir, &model_file(group), &model)?;
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["topic", "rank", "term", "probability"])?;
        for k in 0..model.num_topics() {
            for (rank, (term, p)) in model.top_terms(k, cfg.analysis.top_words)?.into_iter().enumerate() {
                w.write_record([k.to_string(), rank.to_string(), term, fmt_f64(p)])?;
            }
        }
        write_bytes(dir, &format!("top_words_{group}.csv"), &csv_bytes(w)?)?;
    }
    Ok(())
}

fn load_model(dir: &Path, group: &str) -> Result<TopicModel> {
    read_json(dir, &model_file(group), "lda")
}

#[derive(Serialize, Deserialize)]
struct SimilarityArtifact {
    leaders: SimilarityReport,
    majority: SimilarityReport,
}

fn stage_similarity(dir: &Path) -> Result<()> {
    let community = load_model(dir, "community")?;
    let leaders = group_similarity(&community, &load_model(dir, "leaders")?)?;
    let majority = group_similarity(&community, &load_model(dir, "majority")?)?;
    info!(
        "average similarity to community: leaders {:.4}, majority {:.4}",
        leaders.average, majority.average
    );

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["group", "community_topic", "best_group_topic", "similarity"])?;
    for (group, report) in [("leaders", &leaders), ("majority", &majority)] {
        for m in &report.per_topic {
            w.write_record([
                group.to_string(),
                m.community_topic.to_string(),
                m.best_group_topic.to_string(),
                fmt_f64(m.similarity),
            ])?;
        }
        w.write_record([group.to_string(), "average".into(), String::new(), fmt_f64(report.average)])?;
    }
    write_bytes(dir, "similarity.csv", &csv_bytes(w)?)?;

    let categories: Vec<String> = leaders
        .per_topic
        .iter()
        .map(|m| format!("topic {}", m.community_topic))
        .collect();
    let bars = |r: &SimilarityReport| r.per_topic.iter().map(|m| m.similarity).collect::<Vec<_>>();
    let svg = bar_chart(
        "Topic similarity to the whole community",
        "cosine similarity",
        &categories,
        &[("leaders".into(), bars(&leaders)), ("majority".into(), bars(&majority))],
    );
    write_bytes(dir, "similarity.svg", svg.as_bytes())?;
    write_json(dir, "similarity.json", &SimilarityArtifact { leaders, majority })
}

#[derive(Serialize, Deserialize)]
struct FrequencyRow {
    term: String,
    leaders_pct: f64,
    majority_pct: f64,
    /// Absent when the term never occurs in leader documents.
    relative_difference: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct FrequencyArtifact {
    rows: Vec<FrequencyRow>,
}

/// The `n` most frequent terms of the corpus, ties in term order.
fn most_frequent_terms(corpus: &Corpus, n: usize) -> Vec<String> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for t in corpus.documents.iter().flat_map(|d| &d.tokens) {
        *counts.entry(t).or_default() += 1;
    }
    let mut ranked: Vec<(&str, usize)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    ranked.into_iter().take(n).map(|(t, _)| t.to_string()).collect()
}

fn stage_frequencies(cfg: &PipelineConfig, dir: &Path) -> Result<()> {
    let corpus: Corpus = read_json(dir, DOCUMENTS, "preprocess")?;
    let partition: Partition = read_json(dir, PARTITION, "partition")?;
    let words = if cfg.analysis.frequency_words.is_empty() {
        most_frequent_terms(&corpus, cfg.analysis.frequency_top)
    } else {
        // Deduplicated, order kept.
        let mut seen = BTreeSet::new();
        cfg.analysis
            .frequency_words
            .iter()
            .map(|w| w.to_lowercase())
            .filter(|w| seen.insert(w.clone()))
            .collect()
    };
    let [_, leader_docs, majority_docs] = group_corpora(&corpus, &partition);
    let leaders = word_frequencies(&leader_docs, &words)?;
    let majority = word_frequencies(&majority_docs, &words)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["term", "leaders_pct", "majority_pct", "relative_difference"])?;
    let mut rows = Vec::with_capacity(words.len());
    for term in words {
        let (op, maj) = (leaders[&term], majority[&term]);
        let factor = match relative_difference(op, maj) {
            Ok(f) => Some(f),
            Err(Error::ZeroBaseline) => None,
            Err(e) => return Err(e),
        };
        w.write_record([
            term.clone(),
            fmt_f64(op),
            fmt_f64(maj),
            factor.map(fmt_f64).unwrap_or_default(),
        ])?;
        rows.push(FrequencyRow {
            term,
            leaders_pct: op,
            majority_pct: maj,
            relative_difference: factor,
        });
    }
    write_bytes(dir, "word_frequencies.csv", &csv_bytes(w)?)?;
    write_json(dir, "word_frequencies.json", &FrequencyArtifact { rows })
}

#[derive(Serialize, Deserialize)]
struct CorrelationRow {
    window_start: NaiveDate,
    window_end: NaiveDate,
    topic: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CorrelationArtifact {
    window_days: usize,
    results: Vec<CorrelationRow>,
}

fn stage_correlate(cfg: &PipelineConfig, dir: &Path) -> Result<()> {
    let path = cfg
        .input
        .prices
        .as_ref()
        .ok_or_else(|| Error::Config("input.prices is not set; the correlate stage needs a price file".into()))?;
    let prices = PriceSeries::from_csv(path)?;
    let corpus: Corpus = read_json(dir, DOCUMENTS, "preprocess")?;
    let model = load_model(dir, "community")?;
    let window_days = cfg.analysis.window_days;
    let series = (0..model.num_topics())
        .map(|k| topic_weight_series(&model, &corpus.documents, k, window_days))
        .collect::<Result<Vec<_>>>()?;

    let mut text = String::from("topic,date,raw,smoothed,scaled\n");
    for ts in &series {
        for ((raw, smooth), scaled) in ts.raw.iter().zip(&ts.smoothed).zip(ts.scaled()) {
            let _ = writeln!(
                text,
                "{},{},{},{},{}",
                ts.topic,
                raw.0,
                fmt_f64(raw.1),
                fmt_f64(smooth.1),
                fmt_f64(scaled.1)
            );
        }
    }
    write_bytes(dir, "topic_series.csv", text.as_bytes())?;

    let mut windows: Vec<DateWindow> = cfg.analysis.windows.clone();
    windows.sort();
    let per_topic: Vec<_> = series
        .iter()
        .map(|ts| windowed_correlation(ts, &prices, &windows))
        .collect();
    let mut rows = Vec::new();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["window_start", "window_end", "topic", "r", "p", "n"])?;
    for (wi, window) in windows.iter().enumerate() {
        for (topic, results) in per_topic.iter().enumerate() {
            let row = match &results[wi] {
                Ok(c) => {
                    w.write_record([
                        window.start.to_string(),
                        window.end.to_string(),
                        topic.to_string(),
                        fmt_f64(c.r),
                        fmt_f64(c.p_value),
                        c.n.to_string(),
                    ])?;
                    CorrelationRow {
                        window_start: window.start,
                        window_end: window.end,
                        topic,
                        r: Some(c.r),
                        p_value: Some(c.p_value),
                        n: Some(c.n),
                        error: None,
                    }
                }
                Err(e) => {
                    warn!("topic {topic}, window {}..{}: {e}", window.start, window.end);
                    CorrelationRow {
                        window_start: window.start,
                        window_end: window.end,
                        topic,
                        r: None,
                        p_value: None,
                        n: None,
                        error: Some(e.to_string()),
                    }
                }
            };
            rows.push(row);
        }
    }
    write_bytes(dir, "correlation.csv", &csv_bytes(w)?)?;
    write_json(dir, "correlation.json", &CorrelationArtifact { window_days, results: rows })?;

    let origin = prices.points().first().map(|p| p.0).unwrap_or_default();
    let day_x = |d: NaiveDate| (d - origin).num_days() as f64;
    let scaled_prices = min_max_scale(&prices.points().iter().map(|p| p.1).collect::<Vec<_>>());
    let mut plot = vec![Series::new(
        "price",
        prices
            .points()
            .iter()
            .zip(scaled_prices)
            .map(|(p, s)| (day_x(p.0), s))
            .collect(),
    )];
    for ts in &series {
        plot.push(Series::new(
            format!("topic {}", ts.topic),
            ts.scaled().into_iter().map(|(d, v)| (day_x(d), v)).collect(),
        ));
    }
    let svg = line_chart(
        &format!("Price and topic weights ({window_days}-day rolling mean, scaled)"),
        "date",
        "scaled value",
        &plot,
        YScale::Linear,
        &|x| (origin + chrono::Duration::days(x.round() as i64)).to_string(),
    );
    write_bytes(dir, "price_topics.svg", svg.as_bytes())
}

fn stage_export(dir: &Path) -> Result<()> {
    let graph: InteractionGraph = read_json(dir, GRAPH, "graph")?;
    let scores: HitsScores = read_json(dir, HITS, "hits")?;
    let partition: Partition = read_json(dir, PARTITION, "partition")?;
    export_gexf(&graph, &scores, &partition, &dir.join("network.gexf"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_names_round_trip() {
        for s in Stage::ALL {
            assert_eq!(s.name().parse::<Stage>().unwrap(), s);
        }
        assert!("nope".parse::<Stage>().is_err());
    }

    #[test]
    fn outputs_are_distinct() {
        let all: Vec<&str> = Stage::ALL.iter().flat_map(|s| s.outputs()).copied().collect();
        let set: BTreeSet<&str> = all.iter().copied().collect();
        assert_eq!(set.len(), all.len());
        assert!(!set.contains(MANIFEST) && !set.contains(CONFIG_ECHO));
    }

    #[test]
    fn frequent_terms_tie_break() {
        let doc = |tokens: &[&str]| crate::corpus::Document {
            doc_id: "d".into(),
            user_id: "u".into(),
            date: NaiveDate::from_ymd_opt(2018, 1, 1).unwrap(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
        };
        let docs = vec![doc(&["bbb", "aaa", "ccc", "ccc"])];
        let corpus = Corpus {
            vocabulary: crate::corpus::Vocabulary::from_documents(&docs),
            documents: docs,
        };
        assert_eq!(most_frequent_terms(&corpus, 2), ["ccc", "aaa"]);
    }
}
