use std::collections::{BTreeMap, BTreeSet, HashMap};

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{preprocess, RawTweet, StopwordList, TweetKind};
use crate::{Error, Result};

/// Documents with fewer tokens than this are dropped.
pub const MIN_TOKENS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub user_id: String,
    pub date: NaiveDate,
    pub tokens: Vec<String>,
}

/// Lexicographically ordered term list with a reverse index.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Vocabulary {}

impl Vocabulary {
    /// Builds a vocabulary from any terms; duplicates collapse and order is lexicographic.
    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = terms.into_iter().map(Into::into).collect();
        let terms: Vec<String> = set.into_iter().collect();
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Vocabulary { terms, index }
    }

    pub fn from_documents(docs: &[Document]) -> Self {
        Self::from_terms(docs.iter().flat_map(|d| d.tokens.iter().cloned()))
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, i: usize) -> Option<&str> {
        self.terms.get(i).map(String::as_str)
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl TryFrom<Vec<String>> for Vocabulary {
    type Error = String;

    fn try_from(terms: Vec<String>) -> std::result::Result<Self, Self::Error> {
        if terms.windows(2).any(|w| w[0] >= w[1]) {
            return Err("vocabulary terms must be strictly increasing".into());
        }
        Ok(Vocabulary::from_terms(terms))
    }
}

impl From<Vocabulary> for Vec<String> {
    fn from(v: Vocabulary) -> Self {
        v.terms
    }
}

/// Preprocessed documents plus the vocabulary they span.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub vocabulary: Vocabulary,
}

impl Corpus {
    /// Documents written by users accepted by `keep`, in corpus order.
    pub fn documents_by<F>(&self, mut keep: F) -> Vec<Document>
    where
        F: FnMut(&str) -> bool,
    {
        self.documents
            .iter()
            .filter(|d| keep(&d.user_id))
            .cloned()
            .collect()
    }
}

/// Text fed to the topic model: a retweet carries the text of the tweet it
/// copies when that tweet is in the corpus.
fn effective_text<'a>(tweet: &'a RawTweet, by_id: &HashMap<&str, &'a RawTweet>) -> &'a str {
    let mut current = tweet;
    let mut hops = 0;
    while current.kind == TweetKind::Retweet && hops <= by_id.len() {
        match current.parent_id.as_deref().and_then(|p| by_id.get(p)) {
            Some(parent) => current = parent,
            None => break,
        }
        hops += 1;
    }
    &current.text
}

/// Turns tweets into documents and builds the vocabulary over the survivors.
///
/// Output order follows input order.
pub fn build_documents(tweets: &[RawTweet], stopwords: &StopwordList) -> Result<Corpus> {
    let by_id: HashMap<&str, &RawTweet> = tweets.iter().map(|t| (t.id.as_str(), t)).collect();
    let documents: Vec<Document> = tweets
        .par_iter()
        .filter_map(|t| {
            let tokens = preprocess(effective_text(t, &by_id), stopwords);
            (tokens.len() >= MIN_TOKENS).then(|| Document {
                doc_id: t.id.clone(),
                user_id: t.user_id.clone(),
                date: t.created_at.date_naive(),
                tokens,
            })
        })
        .collect();
    if documents.is_empty() {
        return Err(Error::NoDocuments);
    }
    let vocabulary = Vocabulary::from_documents(&documents);
    Ok(Corpus {
        documents,
        vocabulary,
    })
}

/// Share of all token occurrences in `docs` taken by each of `words`, in percent.
pub fn word_frequencies<S: AsRef<str>>(docs: &[Document], words: &[S]) -> Result<BTreeMap<String, f64>> {
    let total: usize = docs.iter().map(|d| d.tokens.len()).sum();
    if docs.is_empty() || total == 0 {
        return Err(Error::EmptyGroup);
    }
    let mut counts: BTreeMap<String, usize> =
        words.iter().map(|w| (w.as_ref().to_string(), 0)).collect();
    for token in docs.iter().flat_map(|d| &d.tokens) {
        if let Some(c) = counts.get_mut(token.as_str()) {
            *c += 1;
        }
    }
    Ok(counts
        .into_iter()
        .map(|(w, c)| (w, 100.0 * c as f64 / total as f64))
        .collect())
}
