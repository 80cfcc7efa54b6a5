//! Deterministic synthetic data with planted topics.
//!
//! Two generators live here. [`planted_corpus`] samples documents straight
//! from a known LDA model (`phi_star`, `theta_star`) where every topic is a
//! "bar": uniform over its own contiguous block of terms. [`synth_dataset`]
//! wraps the same model in a small social network of posts, comments and
//! retweets, with a matching price series, so the whole pipeline can run
//! on it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chrono::{Duration, NaiveDate, TimeZone, Utc};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Gamma, Normal};
use serde::{Deserialize, Serialize};

use crate::analysis::cosine_similarity;
use crate::corpus::{preprocess, Document, Lemmatizer, RawTweet, StopwordList, TweetKind, Vocabulary};
use crate::{Error, Result};

const CONSONANTS: &[u8] = b"bdfgklmnprtvz";
const VOWELS: &[u8] = b"aeiou";

/// `n` distinct four-letter pseudo-words, sorted, each of which survives
/// preprocessing unchanged. The list does not depend on any seed.
pub fn pseudo_words(n: usize) -> Vec<String> {
    let stop = StopwordList::bundled();
    let (nc, nv) = (CONSONANTS.len(), VOWELS.len());
    let total = nc * nv * nc * nv;
    // Stride through the space so consecutive words differ in every letter.
    const STRIDE: usize = 1_693;
    let mut words: Vec<String> = (0..total)
        .map(|i| (i * STRIDE) % total)
        .map(|mut j| {
            let mut w = String::with_capacity(4);
            for (alphabet, size) in [(CONSONANTS, nc), (VOWELS, nv), (CONSONANTS, nc), (VOWELS, nv)] {
                w.push(alphabet[j % size] as char);
                j /= size;
            }
            w
        })
        .filter(|w| preprocess(w, &stop) == [w.as_str()])
        .take(n)
        .collect();
    assert_eq!(words.len(), n, "pseudo-word space exhausted");
    words.sort();
    words
}

fn dirichlet(rng: &mut ChaCha8Rng, alpha: &[f64]) -> Vec<f64> {
    let mut draws: Vec<f64> = alpha
        .iter()
        .map(|&a| Gamma::new(a, 1.0).expect("positive shape").sample(rng))
        .collect();
    let sum: f64 = draws.iter().sum();
    if sum > 0.0 {
        draws.iter_mut().for_each(|x| *x /= sum);
    } else {
        // Tiny shapes can underflow every draw; fall back to one hot.
        let k = rng.random_range(0..draws.len());
        draws.iter_mut().enumerate().for_each(|(i, x)| *x = f64::from(u8::from(i == k)));
    }
    draws
}

fn bar_topics(topics: usize, terms_per_topic: usize) -> Vec<Vec<f64>> {
    let v = topics * terms_per_topic;
    (0..topics)
        .map(|k| {
            (0..v)
                .map(|w| {
                    if w / terms_per_topic == k {
                        1.0 / terms_per_topic as f64
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedSpec {
    pub topics: usize,
    pub terms_per_topic: usize,
    pub docs: usize,
    pub doc_len: usize,
    /// Symmetric Dirichlet parameter for `theta_star`.
    pub alpha: f64,
    pub seed: u64,
}

impl PlantedSpec {
    /// Five bar topics over 25 terms, 1000 documents of 50 tokens.
    pub fn bars(seed: u64) -> Self {
        PlantedSpec {
            topics: 5,
            terms_per_topic: 5,
            docs: 1000,
            doc_len: 50,
            alpha: 1.0,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedCorpus {
    pub vocabulary: Vocabulary,
    /// Rows over `vocabulary` order.
    pub phi_star: Vec<Vec<f64>>,
    pub theta_star: Vec<Vec<f64>>,
    pub documents: Vec<Document>,
}

/// Samples documents from the bar-topic model described by `spec`.
pub fn planted_corpus(spec: PlantedSpec) -> PlantedCorpus {
    let words = pseudo_words(spec.topics * spec.terms_per_topic);
    let phi_star = bar_topics(spec.topics, spec.terms_per_topic);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let alpha = vec![spec.alpha; spec.topics];
    let day = NaiveDate::from_ymd_opt(2018, 1, 1).expect("valid date");
    let mut theta_star = Vec::with_capacity(spec.docs);
    let mut documents = Vec::with_capacity(spec.docs);
    for d in 0..spec.docs {
        let theta = dirichlet(&mut rng, &alpha);
        let tokens = sample_tokens(&mut rng, &theta, &phi_star, &words, spec.doc_len);
        documents.push(Document {
            doc_id: format!("d{d:05}"),
            user_id: format!("u{:03}", d % 100),
            date: day + Duration::days((d % 365) as i64),
            tokens,
        });
        theta_star.push(theta);
    }
    PlantedCorpus {
        vocabulary: Vocabulary::from_terms(words),
        phi_star,
        theta_star,
        documents,
    }
}

fn sample_tokens(
    rng: &mut ChaCha8Rng,
    theta: &[f64],
    phi: &[Vec<f64>],
    words: &[String],
    len: usize,
) -> Vec<String> {
    let topic_dist = WeightedIndex::new(theta).expect("theta has positive mass");
    let word_dists: Vec<WeightedIndex<f64>> = phi
        .iter()
        .map(|row| WeightedIndex::new(row).expect("phi row has positive mass"))
        .collect();
    (0..len)
        .map(|_| {
            let k = topic_dist.sample(rng);
            words[word_dists[k].sample(rng)].clone()
        })
        .collect()
}

/// For each planted topic, the best cosine against any learned topic.
///
/// `learned` rows are over `learned_vocab`; terms missing from either side
/// count as zero probability there.
pub fn best_match_cosines(
    truth_terms: &[String],
    phi_star: &[Vec<f64>],
    learned_vocab: &Vocabulary,
    learned: &[Vec<f64>],
) -> Result<Vec<f64>> {
    let aligned: Vec<Vec<f64>> = learned
        .iter()
        .map(|row| {
            truth_terms
                .iter()
                .map(|t| learned_vocab.index_of(t).map_or(0.0, |i| row[i]))
                .collect()
        })
        .collect();
    phi_star
        .iter()
        .map(|star| {
            let mut best = 0.0f64;
            for row in &aligned {
                best = best.max(cosine_similarity(star, row)?);
            }
            Ok(best)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    /// Number of tweets (posts, comments and retweets together).
    pub docs: usize,
    pub seed: u64,
    pub topics: usize,
    pub terms_per_topic: usize,
}

impl SynthConfig {
    pub fn new(docs: usize, seed: u64) -> Self {
        SynthConfig {
            docs,
            seed,
            topics: 4,
            terms_per_topic: 10,
        }
    }
}

/// The generating model, with `theta_star` keyed by tweet id. A retweet
/// carries the mixture of the tweet whose text it copies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub seed: u64,
    pub terms: Vec<String>,
    pub phi_star: Vec<Vec<f64>>,
    pub theta_star: BTreeMap<String, Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthDataset {
    pub tweets: Vec<RawTweet>,
    pub prices: Vec<(NaiveDate, f64)>,
    pub truth: GroundTruth,
}

pub const SYNTH_START: (i32, u32, u32) = (2017, 9, 1);
pub const SYNTH_END: (i32, u32, u32) = (2019, 6, 30);

const NOISE_STOPWORDS: [&str; 8] = ["the", "and", "is", "this", "to", "of", "what", "just"];

fn noisy_text(rng: &mut ChaCha8Rng, tokens: &[String]) -> String {
    let lemmatizer = Lemmatizer::bundled();
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let roll: f64 = rng.random();
        if roll < 0.08 {
            out.push_str(NOISE_STOPWORDS.choose(rng).expect("non-empty"));
            out.push(' ');
        } else if roll < 0.12 {
            let _ = write!(out, "https://t.co/x{}q ", rng.random_range(100..999));
        } else if roll < 0.14 {
            let _ = write!(out, "{} ", rng.random_range(1..100));
        }
        let plural = format!("{t}s");
        if rng.random::<f64>() < 0.1 && lemmatizer.lemmatize(&plural) == *t {
            out.push_str(&plural);
        } else if rng.random::<f64>() < 0.1 {
            out.push_str(&t.to_uppercase());
        } else {
            out.push_str(t);
        }
        if rng.random::<f64>() < 0.1 {
            out.push_str(if rng.random() { "!" } else { "," });
        }
    }
    out
}

/// Builds the synthetic network, texts and prices described by `cfg`.
pub fn synth_dataset(cfg: SynthConfig) -> Result<SynthDataset> {
    if cfg.docs == 0 || cfg.topics == 0 || cfg.terms_per_topic == 0 {
        return Err(Error::InvalidArgument(
            "synth needs at least one tweet, topic and term per topic".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let words = pseudo_words(cfg.topics * cfg.terms_per_topic);
    let phi_star = bar_topics(cfg.topics, cfg.terms_per_topic);

    let n_users = (cfg.docs / 4).max(20);
    // The last quarter of users only comment and retweet.
    let n_posters = n_users - n_users / 4;
    let user_id = |i: usize| format!("u{i:05}");
    let activity = WeightedIndex::new((0..n_posters).map(|i| 1.0 / ((i + 1) as f64).sqrt())).expect("weights");
    let popularity = WeightedIndex::new((0..n_posters).map(|i| 1.0 / ((i + 1) as f64).powf(1.1))).expect("weights");
    let user_pref: Vec<Vec<f64>> = (0..n_users)
        .map(|_| dirichlet(&mut rng, &vec![1.0; cfg.topics]))
        .collect();

    let start = NaiveDate::from_ymd_opt(SYNTH_START.0, SYNTH_START.1, SYNTH_START.2).expect("valid date");
    let end = NaiveDate::from_ymd_opt(SYNTH_END.0, SYNTH_END.1, SYNTH_END.2).expect("valid date");
    let span = (end - start).num_days() + 1;

    let mut tweets: Vec<RawTweet> = Vec::with_capacity(cfg.docs);
    let mut theta_of: Vec<Vec<f64>> = Vec::with_capacity(cfg.docs);
    let mut posts_by: Vec<Vec<usize>> = vec![Vec::new(); n_posters];
    let mut all_posts: Vec<usize> = Vec::new();
    let conc = 0.5 * cfg.topics as f64;

    for i in 0..cfg.docs {
        let day = start + Duration::days(i as i64 * span / cfg.docs as i64);
        let secs = rng.random_range(0..86_400);
        let created_at = Utc.from_utc_datetime(&day.and_hms_opt(0, 0, 0).expect("midnight")) + Duration::seconds(secs);
        let roll: f64 = rng.random();
        let kind = if all_posts.is_empty() || roll < 0.6 {
            TweetKind::Post
        } else if roll < 0.85 {
            TweetKind::Comment
        } else {
            TweetKind::Retweet
        };
        let (author, parent) = match kind {
            TweetKind::Post => (activity.sample(&mut rng), None),
            _ => {
                let target = popularity.sample(&mut rng);
                let parent = if kind == TweetKind::Retweet && rng.random::<f64>() < 0.1 {
                    rng.random_range(0..tweets.len())
                } else {
                    *posts_by[target]
                        .choose(&mut rng)
                        .unwrap_or_else(|| all_posts.choose(&mut rng).expect("a post exists"))
                };
                (rng.random_range(0..n_users), Some(parent))
            }
        };
        let (text, theta) = if kind == TweetKind::Retweet {
            let p = parent.expect("retweet has parent");
            (format!("RT @{}: {}", tweets[p].user_id, tweets[p].text), theta_of[p].clone())
        } else {
            let alpha: Vec<f64> = user_pref[author].iter().map(|p| (p * conc).max(0.05)).collect();
            let theta = dirichlet(&mut rng, &alpha);
            let len = rng.random_range(8..=16);
            let tokens = sample_tokens(&mut rng, &theta, &phi_star, &words, len);
            (noisy_text(&mut rng, &tokens), theta)
        };
        if kind == TweetKind::Post {
            posts_by[author].push(i);
            all_posts.push(i);
        }
        tweets.push(RawTweet {
            id: format!("t{i:06}"),
            user_id: user_id(author),
            created_at,
            text,
            kind,
            parent_id: parent.map(|p| tweets[p].id.clone()),
        });
        theta_of.push(theta);
    }

    let returns = Normal::new(0.0005, 0.03).expect("valid normal");
    let mut price = 4_500.0f64;
    let prices = (0..span)
        .map(|d| {
            price *= f64::exp(returns.sample(&mut rng));
            (start + Duration::days(d), (price * 100.0).round() / 100.0)
        })
        .collect();

    let theta_star = tweets.iter().map(|t| t.id.clone()).zip(theta_of).collect();
    Ok(SynthDataset {
        tweets,
        prices,
        truth: GroundTruth {
            seed: cfg.seed,
            terms: words,
            phi_star,
            theta_star,
        },
    })
}

pub const SYNTH_TWEETS: &str = "tweets.jsonl";
pub const SYNTH_PRICES: &str = "prices.csv";
pub const SYNTH_TRUTH: &str = "ground_truth.json";
pub const SYNTH_CONFIG: &str = "pipeline.toml";

fn pipeline_toml(cfg: &SynthConfig) -> String {
    format!(
        r#"# Pipeline config for the synthetic dataset generated alongside it.
seed = {seed}

[input]
tweets = "{SYNTH_TWEETS}"
format = "jsonl"
prices = "{SYNTH_PRICES}"

[lda]
k = {k}

[[analysis.windows]]
start = "2017-12-01"
end = "2018-04-30"

[[analysis.windows]]
start = "2018-04-01"
end = "2018-08-31"

[[analysis.windows]]
start = "2019-01-01"
end = "2019-05-31"
"#,
        seed = cfg.seed,
        k = cfg.topics
    )
}

/// Writes `tweets.jsonl`, `prices.csv`, `ground_truth.json` and a matching
/// `pipeline.toml` into `dir`, returning the paths written.
pub fn write_dataset(cfg: SynthConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let ds = synth_dataset(cfg)?;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let mut jsonl = String::new();
    for t in &ds.tweets {
        jsonl.push_str(&serde_json::to_string(t)?);
        jsonl.push('\n');
    }
    let mut prices = String::from("date,close\n");
    for (day, p) in &ds.prices {
        let _ = writeln!(prices, "{day},{p:.2}");
    }
    let mut truth = serde_json::to_string_pretty(&ds.truth)?;
    truth.push('\n');

    let files = [
        (SYNTH_TWEETS, jsonl),
        (SYNTH_PRICES, prices),
        (SYNTH_TRUTH, truth),
        (SYNTH_CONFIG, pipeline_toml(&cfg)),
    ];
    files
        .into_iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}
