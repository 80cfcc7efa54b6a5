//! Latent Dirichlet allocation by collapsed Gibbs sampling.
//!
//! [`train_lda`] estimates the topic-word matrix `phi` (K x V) and the
//! document-topic matrix `theta` (D x K) from counts averaged over the
//! post-burn-in sweeps. Both are row-stochastic and strictly positive.

mod gibbs;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::corpus::{Document, Vocabulary};
use crate::{Error, Result};

pub use gibbs::train_lda;

/// Topic counts tried when choosing K by hand.
pub const K_PRESETS: [usize; 3] = [4, 8, 12];
pub const DEFAULT_K: usize = 4;
pub const DEFAULT_BETA: f64 = 0.01;
pub const DEFAULT_ITERATIONS: usize = 1000;
pub const DEFAULT_BURN_IN: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdaConfig {
    pub k: usize,
    /// Symmetric document-topic prior.
    pub alpha: f64,
    /// Symmetric topic-word prior.
    pub beta: f64,
    pub iterations: usize,
    pub burn_in: usize,
    pub seed: u64,
}

impl LdaConfig {
    /// Defaults: `alpha = 1/k`, `beta = 0.01`, 1000 sweeps, 500 burn-in.
    pub fn new(k: usize, seed: u64) -> Self {
        LdaConfig {
            k,
            alpha: 1.0 / k.max(1) as f64,
            beta: DEFAULT_BETA,
            iterations: DEFAULT_ITERATIONS,
            burn_in: DEFAULT_BURN_IN,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidLdaConfig(m.to_string()));
        if self.k == 0 {
            return bad("k must be at least 1");
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad("alpha must be positive");
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return bad("beta must be positive");
        }
        if self.iterations == 0 {
            return bad("iterations must be at least 1");
        }
        if self.burn_in >= self.iterations {
            return bad("burn_in must be smaller than iterations");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicModel {
    pub config: LdaConfig,
    pub vocabulary: Vocabulary,
    /// K rows over the vocabulary.
    pub phi: Vec<Vec<f64>>,
    /// One row per training document, in training order.
    pub theta: Vec<Vec<f64>>,
    pub log_likelihood_trace: Vec<f64>,
}

impl TopicModel {
    pub fn num_topics(&self) -> usize {
        self.phi.len()
    }

    fn check_topic(&self, topic: usize) -> Result<()> {
        if topic >= self.num_topics() {
            return Err(Error::TopicOutOfRange {
                index: topic,
                k: self.num_topics(),
            });
        }
        Ok(())
    }

    /// `(term, probability)` pairs for the `n` most probable terms of `topic`.
    pub fn top_terms(&self, topic: usize, n: usize) -> Result<Vec<(String, f64)>> {
        self.check_topic(topic)?;
        let row = &self.phi[topic];
        let mut order: Vec<usize> = (0..row.len()).collect();
        order.sort_by(|&a, &b| {
            row[b]
                .partial_cmp(&row[a])
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
        Ok(order
            .into_iter()
            .take(n)
            .map(|w| (self.vocabulary.terms()[w].clone(), row[w]))
            .collect())
    }
}

/// The `n` most probable terms of topic `k`; equal probabilities keep
/// vocabulary order.
pub fn top_words(model: &TopicModel, k: usize, n: usize) -> Result<Vec<String>> {
    Ok(model
        .top_terms(k, n)?
        .into_iter()
        .map(|(term, _)| term)
        .collect())
}

/// Sum over all tokens of `log sum_k theta[d][k] * phi[k][w]`.
///
/// `docs` must be the documents whose mixtures are in `model.theta`, in the
/// same order.
pub fn log_likelihood(docs: &[Document], model: &TopicModel) -> Result<f64> {
    if docs.len() != model.theta.len() {
        return Err(Error::LengthMismatch(docs.len(), model.theta.len()));
    }
    let mut total = 0.0;
    for (doc, theta) in docs.iter().zip(&model.theta) {
        for token in &doc.tokens {
            let w = model
                .vocabulary
                .index_of(token)
                .ok_or_else(|| Error::UnknownTerm(token.clone()))?;
            let p: f64 = theta
                .iter()
                .zip(&model.phi)
                .map(|(t, phi)| t * phi[w])
                .sum();
            total += p.ln();
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use chrono::NaiveDate;

    use super::*;

    fn model(phi: Vec<Vec<f64>>, terms: &[&str]) -> TopicModel {
        let k = phi.len();
        TopicModel {
            config: LdaConfig::new(k, 0),
            vocabulary: Vocabulary::from_terms(terms.iter().copied()),
            phi,
            theta: vec![vec![1.0 / k as f64; k]],
            log_likelihood_trace: vec![],
        }
    }

    fn doc(tokens: &[&str]) -> Document {
        Document {
            doc_id: "d".into(),
            user_id: "u".into(),
            date: NaiveDate::from_ymd_opt(2018, 1, 1).unwrap(),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
        }
    }

    #[test]
    fn config_validation() {
        assert!(LdaConfig::new(4, 1).validate().is_ok());
        let mut c = LdaConfig::new(4, 1);
        c.burn_in = c.iterations;
        assert!(c.validate().is_err());
        assert!(LdaConfig::new(0, 1).validate().is_err());
        let mut c = LdaConfig::new(2, 1);
        c.beta = 0.0;
        assert!(c.validate().is_err());
        assert_eq!(LdaConfig::new(4, 1).alpha, 0.25);
    }

    #[test]
    fn top_word_is_the_heavy_term() {
        let m = model(vec![vec![0.05, 0.9, 0.05]], &["buy", "price", "sell"]);
        assert_eq!(top_words(&m, 0, 1).unwrap(), ["price"]);
    }

    #[test]
    fn ties_keep_vocabulary_order() {
        let m = model(vec![vec![0.4, 0.2, 0.4]], &["alpha", "beta", "gamma"]);
        assert_eq!(top_words(&m, 0, 2).unwrap(), ["alpha", "gamma"]);
    }

    #[test]
    fn n_is_clamped_to_vocabulary() {
        let m = model(vec![vec![0.5, 0.3, 0.2]], &["a", "b", "c"]);
        assert_eq!(top_words(&m, 0, 13).unwrap().len(), 3);
    }

    #[test]
    fn topic_out_of_range() {
        let m = model(vec![vec![1.0]], &["a"]);
        assert!(matches!(top_words(&m, 1, 1), Err(Error::TopicOutOfRange { index: 1, k: 1 })));
    }

    #[test]
    fn one_token_one_topic_likelihood() {
        let m = model(vec![vec![0.25, 0.75]], &["a", "b"]);
        let ll = log_likelihood(&[doc(&["b"])], &m).unwrap();
        assert_eq!(ll, 0.75f64.ln());
    }

    #[test]
    fn more_tokens_never_raise_likelihood() {
        let m = model(vec![vec![0.25, 0.75]], &["a", "b"]);
        let short = log_likelihood(&[doc(&["b", "a"])], &m).unwrap();
        let long = log_likelihood(&[doc(&["b", "a", "b"])], &m).unwrap();
        assert!(long < short);
        assert!(short < 0.0);
    }

    #[test]
    fn unknown_token_is_error() {
        let m = model(vec![vec![1.0]], &["a"]);
        assert!(matches!(log_likelihood(&[doc(&["zzz"])], &m), Err(Error::UnknownTerm(_))));
    }
}
