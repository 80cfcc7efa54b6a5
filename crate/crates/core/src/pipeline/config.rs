use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::analysis::{DateWindow, DEFAULT_WINDOW_DAYS};
use crate::corpus::{InputFormat, StopwordList};
use crate::graph::{HitsParams, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::partition::DEFAULT_THRESHOLD;
use crate::topics::{LdaConfig, DEFAULT_BETA, DEFAULT_BURN_IN, DEFAULT_ITERATIONS, DEFAULT_K};
use crate::{Error, Result};

/// Everything a run needs besides the input files themselves.
///
/// Read from TOML. Only `seed` is mandatory; every section falls back to
/// the library defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    #[serde(default)]
    pub input: InputConfig,
    #[serde(default)]
    pub dates: DateBounds,
    #[serde(default)]
    pub hits: HitsConfig,
    #[serde(default)]
    pub partition: PartitionConfig,
    #[serde(default)]
    pub lda: LdaSection,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tweets: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: InputFormat,
    /// Daily `date,close` prices. Without them the correlation stage is skipped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prices: Option<PathBuf>,
    /// Replaces the bundled stopword list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stopwords: Option<PathBuf>,
    /// Added on top of whichever base list is in use.
    #[serde(default)]
    pub custom_stopwords: Vec<String>,
}

fn default_format() -> InputFormat {
    InputFormat::Jsonl
}

impl Default for InputConfig {
    fn default() -> Self {
        InputConfig {
            tweets: None,
            format: default_format(),
            prices: None,
            stopwords: None,
            custom_stopwords: Vec::new(),
        }
    }
}

/// Inclusive bounds on tweet creation day; tweets outside are dropped at ingest.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DateBounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<NaiveDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<NaiveDate>,
}

impl DateBounds {
    pub fn contains(&self, day: NaiveDate) -> bool {
        self.start.is_none_or(|s| s <= day) && self.end.is_none_or(|e| day <= e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HitsConfig {
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

impl Default for HitsConfig {
    fn default() -> Self {
        HitsConfig {
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
        }
    }
}

impl From<HitsConfig> for HitsParams {
    fn from(c: HitsConfig) -> Self {
        HitsParams {
            max_iter: c.max_iter,
            tol: c.tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionConfig {
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}

impl Default for PartitionConfig {
    fn default() -> Self {
        PartitionConfig {
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

/// LDA settings shared by the community, leader and majority models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LdaSection {
    #[serde(default = "default_k")]
    pub k: usize,
    /// Defaults to `1 / k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
}

fn default_k() -> usize {
    DEFAULT_K
}

fn default_beta() -> f64 {
    DEFAULT_BETA
}

fn default_iterations() -> usize {
    DEFAULT_ITERATIONS
}

fn default_burn_in() -> usize {
    DEFAULT_BURN_IN
}

impl Default for LdaSection {
    fn default() -> Self {
        LdaSection {
            k: DEFAULT_K,
            alpha: None,
            beta: DEFAULT_BETA,
            iterations: DEFAULT_ITERATIONS,
            burn_in: DEFAULT_BURN_IN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default = "default_window_days")]
    pub window_days: usize,
    #[serde(default = "default_windows")]
    pub windows: Vec<DateWindow>,
    /// Words for the frequency table; empty means the most frequent
    /// `frequency_top` community terms.
    #[serde(default)]
    pub frequency_words: Vec<String>,
    #[serde(default = "default_frequency_top")]
    pub frequency_top: usize,
    /// Terms listed per topic in the top-words reports.
    #[serde(default = "default_top_words")]
    pub top_words: usize,
}

fn default_window_days() -> usize {
    DEFAULT_WINDOW_DAYS
}

fn ymd(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).expect("valid date")
}

/// The three periods studied for the topic/price relationship.
pub fn default_windows() -> Vec<DateWindow> {
    vec![
        DateWindow { start: ymd(2017, 12, 1), end: ymd(2018, 4, 30) },
        DateWindow { start: ymd(2018, 4, 1), end: ymd(2018, 8, 31) },
        DateWindow { start: ymd(2019, 1, 1), end: ymd(2019, 5, 31) },
    ]
}

fn default_frequency_top() -> usize {
    20
}

fn default_top_words() -> usize {
    10
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            window_days: DEFAULT_WINDOW_DAYS,
            windows: default_windows(),
            frequency_words: Vec::new(),
            frequency_top: default_frequency_top(),
            top_words: default_top_words(),
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub threshold: Option<f64>,
    pub k: Option<usize>,
    pub max_iter: Option<usize>,
    pub window_days: Option<usize>,
    pub format: Option<InputFormat>,
}

impl PipelineConfig {
    /// A config with every default and no inputs.
    pub fn with_seed(seed: u64) -> Self {
        PipelineConfig {
            seed,
            input: InputConfig::default(),
            dates: DateBounds::default(),
            hits: HitsConfig::default(),
            partition: PartitionConfig::default(),
            lda: LdaSection::default(),
            analysis: AnalysisConfig::default(),
            output_dir: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config file. Relative input paths and the output directory
    /// are taken relative to the file's own directory and stored absolute,
    /// so the echoed config can be reloaded from anywhere.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: PipelineConfig =
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = std::path::absolute(path.parent().unwrap_or(Path::new("")))
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let resolve = |p: &mut Option<PathBuf>| {
            if let Some(p) = p {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        };
        resolve(&mut cfg.input.tweets);
        resolve(&mut cfg.input.prices);
        resolve(&mut cfg.input.stopwords);
        resolve(&mut cfg.output_dir);
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(dir) = &o.output_dir {
            self.output_dir = Some(dir.clone());
        }
        if let Some(seed) = o.seed {
            self.seed = seed;
        }
        if let Some(t) = o.threshold {
            self.partition.threshold = t;
        }
        if let Some(k) = o.k {
            self.lda.k = k;
        }
        if let Some(m) = o.max_iter {
            self.hits.max_iter = m;
        }
        if let Some(w) = o.window_days {
            self.analysis.window_days = w;
        }
        if let Some(f) = o.format {
            self.input.format = f;
        }
    }

    /// Checks ranges and that every referenced input file exists.
    pub fn validate(&self) -> Result<()> {
        for (name, path) in [
            ("input.tweets", &self.input.tweets),
            ("input.prices", &self.input.prices),
            ("input.stopwords", &self.input.stopwords),
        ] {
            if let Some(p) = path {
                if !p.is_file() {
                    return Err(Error::Config(format!("{name}: {} does not exist", p.display())));
                }
            }
        }
        let t = self.partition.threshold;
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::InvalidThreshold(t));
        }
        if self.hits.max_iter == 0 || !(self.hits.tol > 0.0) {
            return Err(Error::Config("hits.max_iter and hits.tol must be positive".into()));
        }
        if self.analysis.window_days == 0 {
            return Err(Error::Config("analysis.window_days must be at least 1".into()));
        }
        if let (Some(s), Some(e)) = (self.dates.start, self.dates.end) {
            if e < s {
                return Err(Error::Config(format!("dates.end {e} is before dates.start {s}")));
            }
        }
        if let Some(w) = self.analysis.windows.iter().find(|w| w.end < w.start) {
            return Err(Error::Config(format!("analysis window {}..{} is reversed", w.start, w.end)));
        }
        self.lda_config().validate()
    }

    pub fn lda_config(&self) -> LdaConfig {
        let mut c = LdaConfig::new(self.lda.k, self.seed);
        c.beta = self.lda.beta;
        c.iterations = self.lda.iterations;
        c.burn_in = self.lda.burn_in;
        if let Some(a) = self.lda.alpha {
            c.alpha = a;
        }
        c
    }

    pub fn stopwords(&self) -> Result<StopwordList> {
        let base = match &self.input.stopwords {
            Some(p) => StopwordList::from_file(p)?,
            None => StopwordList::bundled(),
        };
        Ok(base.with_custom(&self.input.custom_stopwords))
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("out"))
    }

    /// The config as echoed into the manifest: everything except where the
    /// outputs went, so bundles written to different places compare equal.
    pub fn echo(&self) -> PipelineConfig {
        PipelineConfig {
            output_dir: None,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_is_mandatory() {
        let err = PipelineConfig::from_toml("[lda]\nk = 4\n").unwrap_err();
        assert!(err.to_string().contains("seed"), "{err}");
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = PipelineConfig::from_toml("seed = 3\n").unwrap();
        assert_eq!(c, PipelineConfig::with_seed(3));
        assert_eq!(c.lda_config().alpha, 0.25);
        assert_eq!(c.analysis.windows.len(), 3);
    }

    #[test]
    fn toml_round_trip() {
        let mut c = PipelineConfig::with_seed(9);
        c.input.tweets = Some("/data/t.jsonl".into());
        c.input.custom_stopwords = vec!["bitcoin".into()];
        c.dates.start = Some(ymd(2016, 1, 1));
        c.lda.alpha = Some(0.1);
        c.hits.tol = 1e-10;
        let text = c.to_toml().unwrap();
        assert_eq!(PipelineConfig::from_toml(&text).unwrap(), c);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(PipelineConfig::from_toml("seed = 1\nsede = 2\n").is_err());
        assert!(PipelineConfig::from_toml("seed = 1\n[lda]\nkk = 2\n").is_err());
    }

    #[test]
    fn overrides_win() {
        let mut c = PipelineConfig::with_seed(1);
        c.apply(&Overrides {
            seed: Some(5),
            k: Some(8),
            threshold: Some(0.5),
            format: Some(InputFormat::Csv),
            ..Overrides::default()
        });
        assert_eq!((c.seed, c.lda.k, c.partition.threshold), (5, 8, 0.5));
        assert_eq!(c.input.format, InputFormat::Csv);
    }

    #[test]
    fn validation_names_missing_file() {
        let mut c = PipelineConfig::with_seed(1);
        c.input.prices = Some("/no/such/prices.csv".into());
        let err = c.validate().unwrap_err();
        assert!(err.is_user_error());
        assert!(err.to_string().contains("/no/such/prices.csv"));
    }

    #[test]
    fn validation_ranges() {
        let mut c = PipelineConfig::with_seed(1);
        c.partition.threshold = 0.0;
        assert!(c.validate().is_err());
        let mut c = PipelineConfig::with_seed(1);
        c.lda.burn_in = c.lda.iterations;
        assert!(c.validate().is_err());
    }

    #[test]
    fn date_bounds() {
        let b = DateBounds { start: Some(ymd(2018, 1, 1)), end: None };
        assert!(!b.contains(ymd(2017, 12, 31)));
        assert!(b.contains(ymd(2030, 1, 1)));
    }
}
