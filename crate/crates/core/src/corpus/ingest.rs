use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use log::warn;
use serde::{Deserialize, Serialize};

use super::{RawTweet, TweetKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Jsonl,
    Csv,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" | "json" | "ndjson" => Ok(InputFormat::Jsonl),
            "csv" => Ok(InputFormat::Csv),
            other => Err(format!("unknown input format {other:?}")),
        }
    }
}

impl InputFormat {
    fn name(self) -> &'static str {
        match self {
            InputFormat::Jsonl => "JSON Lines",
            InputFormat::Csv => "CSV",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub accepted: usize,
    pub rejected: usize,
    pub duplicate_ids: usize,
    pub errors: Vec<LineError>,
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub tweets: Vec<RawTweet>,
    pub report: IngestReport,
}

/// Wire shape of one input record, shared by the JSONL and CSV readers.
#[derive(Debug, Deserialize)]
struct Record {
    id: String,
    user_id: String,
    created_at: String,
    text: String,
    kind: String,
    #[serde(default)]
    parent_id: Option<String>,
}

impl Record {
    fn into_tweet(self) -> std::result::Result<RawTweet, String> {
        let created_at = DateTime::parse_from_rfc3339(self.created_at.trim())
            .map_err(|e| format!("created_at {:?}: {e}", self.created_at))?
            .with_timezone(&Utc);
        let kind = TweetKind::from_str(self.kind.trim())?;
        let tweet = RawTweet {
            id: self.id,
            user_id: self.user_id,
            created_at,
            text: self.text,
            kind,
            parent_id: self.parent_id.filter(|p| !p.is_empty()),
        };
        tweet.validate()?;
        Ok(tweet)
    }
}

/// Reads tweet records from `path`.
///
/// Malformed records are reported per line and skipped. The whole file is
/// rejected when more than half of its records are malformed, which almost
/// always means the wrong format was selected.
pub fn ingest(path: &Path, format: InputFormat) -> Result<Ingested> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    ingest_reader(file, format, path)
}

/// Like [`ingest`] over any reader; `origin` is only used in error messages.
pub fn ingest_reader<R: Read>(reader: R, format: InputFormat, origin: &Path) -> Result<Ingested> {
    let mut parsed: Vec<(usize, std::result::Result<RawTweet, String>)> = Vec::new();
    match format {
        InputFormat::Jsonl => {
            for (i, line) in BufReader::new(reader).lines().enumerate() {
                let line = line.map_err(|e| Error::io(origin, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let outcome = serde_json::from_str::<Record>(&line)
                    .map_err(|e| e.to_string())
                    .and_then(Record::into_tweet);
                parsed.push((i + 1, outcome));
            }
        }
        InputFormat::Csv => {
            let mut rdr = csv::ReaderBuilder::new()
                .flexible(true)
                .from_reader(reader);
            let headers = rdr.headers()?.clone();
            for row in rdr.records() {
                let row = match row {
                    Ok(row) => row,
                    Err(e) => {
                        let line = e.position().map_or(0, |p| p.line() as usize);
                        if matches!(e.kind(), csv::ErrorKind::Io(_)) {
                            return Err(e.into());
                        }
                        parsed.push((line, Err(e.to_string())));
                        continue;
                    }
                };
                let line = row.position().map_or(0, |p| p.line() as usize);
                let outcome = row
                    .deserialize::<Record>(Some(&headers))
                    .map_err(|e| e.to_string())
                    .and_then(Record::into_tweet);
                parsed.push((line, outcome));
            }
        }
    }

    let total = parsed.len();
    let mut report = IngestReport::default();
    let mut tweets: Vec<RawTweet> = Vec::with_capacity(total);
    let mut slot: HashMap<String, usize> = HashMap::with_capacity(total);
    for (line, outcome) in parsed {
        match outcome {
            Ok(tweet) => {
                report.accepted += 1;
                if let Some(&i) = slot.get(&tweet.id) {
                    warn!("duplicate tweet id {:?} at line {line}; keeping the later record", tweet.id);
                    report.duplicate_ids += 1;
                    tweets[i] = tweet;
                } else {
                    slot.insert(tweet.id.clone(), tweets.len());
                    tweets.push(tweet);
                }
            }
            Err(reason) => {
                report.rejected += 1;
                report.errors.push(LineError { line, reason });
            }
        }
    }
    if report.rejected * 2 > total {
        return Err(Error::MostlyMalformed {
            path: origin.to_path_buf(),
            rejected: report.rejected,
            total,
            format: format.name().to_string(),
        });
    }
    Ok(Ingested { tweets, report })
}
