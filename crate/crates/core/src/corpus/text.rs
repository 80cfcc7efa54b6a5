use std::collections::BTreeSet;
use std::path::Path;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Tokens shorter than this are dropped.
pub const MIN_TOKEN_LEN: usize = 3;

const BUNDLED_STOPWORDS: &str = include_str!("../../data/stopwords_en.txt");
const BUNDLED_SUFFIX_RULES: &str = include_str!("../../data/suffix_rules.txt");

const URL_PREFIXES: [&str; 3] = ["http://", "https://", "www."];

/// Stopwords: a base list plus user-supplied custom terms.
///
/// Lookup is case-insensitive; both sets are stored lowercased.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList {
    base: BTreeSet<String>,
    custom: BTreeSet<String>,
}

impl StopwordList {
    /// The list shipped in `data/stopwords_en.txt`.
    pub fn bundled() -> Self {
        Self::from_text(BUNDLED_STOPWORDS)
    }

    /// Parses the stopword file format: one term per line, `#` comments.
    pub fn from_text(text: &str) -> Self {
        let base = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_lowercase)
            .collect();
        StopwordList {
            base,
            custom: BTreeSet::new(),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_text(&text))
    }

    pub fn with_custom<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.custom
            .extend(words.into_iter().map(|w| w.as_ref().trim().to_lowercase()));
        self
    }

    pub fn contains(&self, word: &str) -> bool {
        if word.chars().any(char::is_uppercase) {
            let lower = word.to_lowercase();
            self.base.contains(&lower) || self.custom.contains(&lower)
        } else {
            self.base.contains(word) || self.custom.contains(word)
        }
    }

    pub fn len(&self) -> usize {
        self.base.union(&self.custom).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct SuffixRule {
    suffix: String,
    replacement: String,
    min_stem: usize,
}

/// Table-driven suffix lemmatizer.
///
/// The first rule whose suffix matches decides the rewrite; rewriting
/// repeats until a fixed point, so `lemmatize` is idempotent.
#[derive(Debug, Clone)]
pub struct Lemmatizer {
    rules: Vec<SuffixRule>,
}

impl Lemmatizer {
    /// The rule table shipped in `data/suffix_rules.txt`.
    pub fn bundled() -> &'static Lemmatizer {
        static BUNDLED: OnceLock<Lemmatizer> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            Lemmatizer::from_table(BUNDLED_SUFFIX_RULES).expect("bundled suffix table is valid")
        })
    }

    /// Parses `suffix replacement min_stem` rows; `-` means an empty replacement.
    pub fn from_table(text: &str) -> std::result::Result<Self, String> {
        let mut rules = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            let [suffix, replacement, min_stem] = cols[..] else {
                return Err(format!("line {}: expected 3 columns", i + 1));
            };
            let replacement = if replacement == "-" { "" } else { replacement };
            if replacement != suffix && replacement.len() >= suffix.len() {
                return Err(format!("line {}: replacement must be shorter than suffix", i + 1));
            }
            let min_stem = min_stem
                .parse()
                .map_err(|e| format!("line {}: {e}", i + 1))?;
            rules.push(SuffixRule {
                suffix: suffix.to_string(),
                replacement: replacement.to_string(),
                min_stem,
            });
        }
        Ok(Lemmatizer { rules })
    }

    pub fn lemmatize(&self, word: &str) -> String {
        let mut current = word.to_string();
        while let Some(next) = self.rewrite_once(&current) {
            current = next;
        }
        current
    }

    fn rewrite_once(&self, word: &str) -> Option<String> {
        let rule = self.rules.iter().find(|r| word.ends_with(&r.suffix))?;
        if rule.replacement == rule.suffix {
            return None;
        }
        let stem = &word[..word.len() - rule.suffix.len()];
        if stem.chars().count() < rule.min_stem {
            return None;
        }
        Some(format!("{stem}{}", rule.replacement))
    }
}

fn strip_urls(text: &str) -> String {
    let lower = text.to_ascii_lowercase();
    let mut out = String::with_capacity(text.len());
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if URL_PREFIXES.iter().any(|p| lower[i..].starts_with(p)) {
            while chars.next_if(|&(_, c)| !c.is_whitespace()).is_some() {}
            out.push(' ');
            continue;
        }
        out.push(c);
    }
    out
}

/// Reduces free text to lowercase English lemmas.
///
/// Steps, in order: strip URLs, lowercase, split on non-alphabetic
/// characters, drop tokens with anything outside `a-z`, lemmatize, drop
/// stopwords, drop tokens shorter than [`MIN_TOKEN_LEN`].
pub fn preprocess(text: &str, stopwords: &StopwordList) -> Vec<String> {
    let lemmatizer = Lemmatizer::bundled();
    strip_urls(text)
        .to_lowercase()
        .split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty() && t.bytes().all(|b| b.is_ascii_lowercase()))
        .map(|t| lemmatizer.lemmatize(t))
        .filter(|t| !stopwords.contains(t))
        .filter(|t| t.len() >= MIN_TOKEN_LEN)
        .collect()
}
