//! Tweet ingestion and text preprocessing.
//!
//! Raw records come in as JSON Lines or CSV ([`ingest`]), are reduced to
//! lowercase alphabetic lemmas ([`preprocess`]) and become [`Document`]s
//! over a shared, lexicographically ordered [`Vocabulary`]
//! ([`build_documents`]).

mod documents;
mod ingest;
mod text;

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

pub use documents::{build_documents, word_frequencies, Corpus, Document, Vocabulary, MIN_TOKENS};
pub use ingest::{ingest, ingest_reader, IngestReport, Ingested, InputFormat, LineError};
pub use text::{preprocess, Lemmatizer, StopwordList, MIN_TOKEN_LEN};

/// What a record does: an original post, a reply, or a retweet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TweetKind {
    Post,
    Comment,
    Retweet,
}

impl TweetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TweetKind::Post => "post",
            TweetKind::Comment => "comment",
            TweetKind::Retweet => "retweet",
        }
    }
}

impl fmt::Display for TweetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TweetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "post" => Ok(TweetKind::Post),
            "comment" => Ok(TweetKind::Comment),
            "retweet" => Ok(TweetKind::Retweet),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

/// One ingested record.
///
/// Comments and retweets always carry the id of the tweet they act on,
/// and that id is never their own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTweet {
    pub id: String,
    pub user_id: String,
    pub created_at: DateTime<Utc>,
    pub text: String,
    pub kind: TweetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent_id: Option<String>,
}

impl RawTweet {
    pub fn validate(&self) -> Result<(), String> {
        if self.id.is_empty() {
            return Err("empty id".into());
        }
        if self.user_id.is_empty() {
            return Err("empty user_id".into());
        }
        match (self.kind, self.parent_id.as_deref()) {
            (TweetKind::Post, _) => Ok(()),
            (kind, None) => Err(format!("{kind} without parent_id")),
            (kind, Some(parent)) if parent == self.id => {
                Err(format!("{kind} names itself as parent"))
            }
            _ => Ok(()),
        }
    }
}
