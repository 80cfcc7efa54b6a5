use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LdaConfig, TopicModel};
use crate::corpus::{Document, Vocabulary};
use crate::{Error, Result};

/// Token-level state of the sampler. Counts are laid out word-major
/// (`word_topic[w * k + t]`) so one token's K counts are contiguous.
struct Sampler {
    k: usize,
    v: usize,
    alpha: f64,
    beta: f64,
    words: Vec<u32>,
    doc_start: Vec<usize>,
    z: Vec<u32>,
    doc_topic: Vec<u32>,
    word_topic: Vec<u32>,
    topic_total: Vec<u32>,
}

impl Sampler {
    fn new(docs: &[Document], vocab: &Vocabulary, config: &LdaConfig, rng: &mut ChaCha8Rng) -> Result<Self> {
        let k = config.k;
        let mut words = Vec::new();
        let mut doc_start = Vec::with_capacity(docs.len() + 1);
        doc_start.push(0);
        for doc in docs {
            for token in &doc.tokens {
                let w = vocab
                    .index_of(token)
                    .ok_or_else(|| Error::UnknownTerm(token.clone()))?;
                words.push(w as u32);
            }
            doc_start.push(words.len());
        }
        let mut s = Sampler {
            k,
            v: vocab.len(),
            alpha: config.alpha,
            beta: config.beta,
            z: Vec::with_capacity(words.len()),
            doc_topic: vec![0; docs.len() * k],
            word_topic: vec![0; vocab.len() * k],
            topic_total: vec![0; k],
            words,
            doc_start,
        };
        for d in 0..docs.len() {
            for i in s.doc_start[d]..s.doc_start[d + 1] {
                let t = rng.random_range(0..k as u32);
                s.z.push(t);
                s.add(d, s.words[i] as usize, t as usize);
            }
        }
        Ok(s)
    }

    fn num_docs(&self) -> usize {
        self.doc_start.len() - 1
    }

    #[inline]
    fn add(&mut self, d: usize, w: usize, t: usize) {
        self.doc_topic[d * self.k + t] += 1;
        self.word_topic[w * self.k + t] += 1;
        self.topic_total[t] += 1;
    }

    #[inline]
    fn remove(&mut self, d: usize, w: usize, t: usize) {
        self.doc_topic[d * self.k + t] -= 1;
        self.word_topic[w * self.k + t] -= 1;
        self.topic_total[t] -= 1;
    }

    /// One full sweep, each token drawn from its full conditional with
    /// its own assignment removed from the counts.
    fn sweep(&mut self, rng: &mut ChaCha8Rng, weights: &mut [f64]) {
        let k = self.k;
        let v_beta = self.v as f64 * self.beta;
        for d in 0..self.num_docs() {
            for i in self.doc_start[d]..self.doc_start[d + 1] {
                let w = self.words[i] as usize;
                self.remove(d, w, self.z[i] as usize);

                let dt = &self.doc_topic[d * k..(d + 1) * k];
                let wt = &self.word_topic[w * k..(w + 1) * k];
                let mut total = 0.0;
                for t in 0..k {
                    total += (dt[t] as f64 + self.alpha) * (wt[t] as f64 + self.beta)
                        / (self.topic_total[t] as f64 + v_beta);
                    weights[t] = total;
                }
                let u = rng.random::<f64>() * total;
                let t = weights.iter().position(|&c| u < c).unwrap_or(k - 1);

                self.z[i] = t as u32;
                self.add(d, w, t);
            }
        }
    }

    /// Log-likelihood of the corpus under the point estimates of the
    /// current sample.
    fn log_likelihood(&self) -> f64 {
        let k = self.k;
        let v_beta = self.v as f64 * self.beta;
        let k_alpha = k as f64 * self.alpha;
        let topic_norm: Vec<f64> = self
            .topic_total
            .iter()
            .map(|&n| 1.0 / (n as f64 + v_beta))
            .collect();
        let mut total = 0.0;
        for d in 0..self.num_docs() {
            let (start, end) = (self.doc_start[d], self.doc_start[d + 1]);
            let doc_norm = 1.0 / ((end - start) as f64 + k_alpha);
            let dt = &self.doc_topic[d * k..(d + 1) * k];
            for &w in &self.words[start..end] {
                let wt = &self.word_topic[w as usize * k..(w as usize + 1) * k];
                let p: f64 = (0..k)
                    .map(|t| {
                        (dt[t] as f64 + self.alpha) * doc_norm * (wt[t] as f64 + self.beta) * topic_norm[t]
                    })
                    .sum();
                total += p.ln();
            }
        }
        total
    }
}

/// Trains LDA on `docs` over `vocab` with collapsed Gibbs sampling.
///
/// Topic assignments start uniformly at random from `config.seed`. After
/// `burn_in` sweeps the count tables are summed every sweep, and `phi`
/// and `theta` are the smoothed averages of those tables. Identical inputs
/// give bit-identical models.
pub fn train_lda(docs: &[Document], vocab: &Vocabulary, config: LdaConfig) -> Result<TopicModel> {
    config.validate()?;
    if docs.is_empty() {
        return Err(Error::NoDocuments);
    }
    if config.k > vocab.len() {
        return Err(Error::TooManyTopics {
            k: config.k,
            vocab: vocab.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut s = Sampler::new(docs, vocab, &config, &mut rng)?;
    let (k, v, n_docs) = (s.k, s.v, s.num_docs());

    let mut sum_word_topic = vec![0u64; v * k];
    let mut sum_doc_topic = vec![0u64; n_docs * k];
    let mut weights = vec![0.0; k];
    let mut trace = Vec::with_capacity(config.iterations);
    for it in 0..config.iterations {
        s.sweep(&mut rng, &mut weights);
        trace.push(s.log_likelihood());
        if it >= config.burn_in {
            for (acc, &c) in sum_word_topic.iter_mut().zip(&s.word_topic) {
                *acc += u64::from(c);
            }
            for (acc, &c) in sum_doc_topic.iter_mut().zip(&s.doc_topic) {
                *acc += u64::from(c);
            }
        }
    }

    let samples = (config.iterations - config.burn_in) as f64;
    let v_beta = v as f64 * config.beta;
    let mut phi = vec![vec![0.0; v]; k];
    for (t, row) in phi.iter_mut().enumerate() {
        let mean: Vec<f64> = (0..v)
            .map(|w| sum_word_topic[w * k + t] as f64 / samples)
            .collect();
        let denom = mean.iter().sum::<f64>() + v_beta;
        for (p, m) in row.iter_mut().zip(mean) {
            *p = (m + config.beta) / denom;
        }
    }
    let k_alpha = k as f64 * config.alpha;
    let theta = (0..n_docs)
        .map(|d| {
            let mean: Vec<f64> = sum_doc_topic[d * k..(d + 1) * k]
                .iter()
                .map(|&c| c as f64 / samples)
                .collect();
            let denom = mean.iter().sum::<f64>() + k_alpha;
            mean.into_iter().map(|m| (m + config.alpha) / denom).collect()
        })
        .collect();

    Ok(TopicModel {
        config,
        vocabulary: vocab.clone(),
        phi,
        theta,
        log_likelihood_trace: trace,
    })
}
