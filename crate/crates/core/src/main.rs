use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use influencer_topics::corpus::InputFormat;
use influencer_topics::pipeline::{run_pipeline, run_stage, Manifest, Overrides, PipelineConfig, Stage};
use influencer_topics::synth::{write_dataset, SynthConfig};
use influencer_topics::{Error, Result};

/// Opinion-leader detection and per-group topic comparison for tweet corpora.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Pipeline config (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory; overrides `output_dir` in the config.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cumulative authority share that defines the opinion leaders.
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Number of LDA topics.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// HITS iteration cap.
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Rolling-mean window for topic weights, in days.
    #[arg(long, global = true)]
    window_days: Option<usize>,
    /// Tweet input format: json (one object per line) or csv.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<InputFormat>,
}

fn parse_format(s: &str) -> std::result::Result<InputFormat, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage in order.
    Run,
    /// Read and validate tweets.
    Ingest,
    /// Turn tweets into documents and build the vocabulary.
    Preprocess,
    /// Build the interaction graph.
    Graph,
    /// Score users with HITS.
    Hits,
    /// Split users into opinion leaders and majority.
    Partition,
    /// Train the community, leader and majority topic models.
    Lda,
    /// Compare group topics with the community topics.
    Similarity,
    /// Word-frequency table for leaders versus majority.
    Frequencies,
    /// Correlate topic weights with the price series.
    Correlate,
    /// Write the graph as GEXF.
    ExportGexf,
    /// Write a deterministic synthetic dataset with a matching config.
    Synth {
        /// Number of tweets.
        #[arg(long, default_value_t = 1000)]
        docs: usize,
        /// Number of planted topics.
        #[arg(long, default_value_t = 4)]
        topics: usize,
    },
}

impl Command {
    fn stage(&self) -> Option<Stage> {
        Some(match self {
            Command::Ingest => Stage::Ingest,
            Command::Preprocess => Stage::Preprocess,
            Command::Graph => Stage::Graph,
            Command::Hits => Stage::Hits,
            Command::Partition => Stage::Partition,
            Command::Lda => Stage::Lda,
            Command::Similarity => Stage::Similarity,
            Command::Frequencies => Stage::Frequencies,
            Command::Correlate => Stage::Correlate,
            Command::ExportGexf => Stage::ExportGexf,
            Command::Run | Command::Synth { .. } => return None,
        })
    }
}

const DEFAULT_SYNTH_SEED: u64 = 7;

fn load_config(cli: &Cli) -> Result<PipelineConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config is required for this command".into()))?;
    let mut cfg = PipelineConfig::load(path)?;
    cfg.apply(&Overrides {
        output_dir: cli.out.clone(),
        seed: cli.seed,
        threshold: cli.threshold,
        k: cli.k,
        max_iter: cli.max_iter,
        window_days: cli.window_days,
        format: cli.format,
    });
    Ok(cfg)
}

fn report(manifest: &Manifest, dir: &std::path::Path) {
    println!(
        "{} files in {} ({})",
        manifest.files.len(),
        dir.display(),
        if manifest.complete { "complete" } else { "partial" }
    );
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Synth { docs, topics } => {
            let out = cli
                .out
                .clone()
                .ok_or_else(|| Error::Config("synth needs --out DIR".into()))?;
            let cfg = SynthConfig {
                topics: *topics,
                ..SynthConfig::new(*docs, cli.seed.unwrap_or(DEFAULT_SYNTH_SEED))
            };
            for path in write_dataset(cfg, &out)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Run => {
            let cfg = load_config(cli)?;
            let bundle = run_pipeline(&cfg)?;
            report(&bundle.manifest, &bundle.dir);
            Ok(())
        }
        cmd => {
            let stage = cmd.stage().expect("stage command");
            let cfg = load_config(cli)?;
            let manifest = run_stage(stage, &cfg)?;
            report(&manifest, &cfg.output_dir());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("INFLUENCER_TOPICS_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                // Stage errors already print their cause inline.
                if !matches!(e, Error::Stage { .. }) {
                    eprintln!("  caused by: {s}");
                }
                source = s.source();
            }
            if e.is_user_error() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
