//! Opinion-leader detection and per-group topic comparison for tweet corpora.
//!
//! The pipeline turns a corpus of posts, comments and retweets into a
//! user interaction graph, ranks users by HITS authority, splits the
//! smallest set of users holding 80% of the authority (opinion leaders)
//! from everyone else (majority users), trains an LDA topic model per
//! group plus one for the whole community, and compares the groups.
//!
//! Modules map onto pipeline stages:
//!
//! - [`corpus`]: ingestion, text preprocessing, documents and vocabulary
//! - [`graph`]: interaction graph, HITS scores, GEXF/CSV export
//! - [`partition`]: cumulative-authority split into leaders and majority
//! - [`topics`]: collapsed Gibbs LDA and top-word extraction
//! - [`analysis`]: topic similarity, word-frequency factors, price correlation
//! - [`pipeline`]: config, staged execution, artifacts and manifest
//! - [`synth`]: deterministic synthetic datasets with planted topics

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod partition;
pub mod pipeline;
pub mod plot;
pub mod synth;
pub mod topics;

pub use error::{Error, Result};
