use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::PipelineConfig;
use crate::{Error, Result};

/// Carried by every JSON artifact; a reader refuses any other value.
pub const SCHEMA_VERSION: &str = "influencer-topics/1";

pub const MANIFEST: &str = "manifest.json";

#[derive(Serialize)]
struct Versioned<'a, T> {
    schema_version: &'a str,
    #[serde(flatten)]
    data: &'a T,
}

pub(crate) fn write_bytes(dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(|e| Error::io(path, e))
}

fn to_pretty<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes `data` (which must serialize as a map) with the schema version
/// merged in at the top level.
pub(crate) fn write_json<T: Serialize>(dir: &Path, name: &str, data: &T) -> Result<()> {
    let bytes = to_pretty(&Versioned {
        schema_version: SCHEMA_VERSION,
        data,
    })?;
    write_bytes(dir, name, &bytes)
}

/// Reads an artifact written by `producer`, checking its schema version.
pub(crate) fn read_json<T: DeserializeOwned>(dir: &Path, name: &str, producer: &'static str) -> Result<T> {
    let path = dir.join(name);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(Error::MissingArtifact { path, stage: producer })
        }
        Err(e) => return Err(Error::io(path, e)),
    };
    let parse_err = |path: &Path, e: serde_json::Error| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(|e| parse_err(&path, e))?;
    let found = value
        .as_object_mut()
        .and_then(|o| o.remove("schema_version"))
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_else(|| "<none>".into());
    if found != SCHEMA_VERSION {
        return Err(Error::SchemaMismatch {
            path,
            found,
            expected: SCHEMA_VERSION.into(),
            stage: producer,
        });
    }
    serde_json::from_value(value).map_err(|e| parse_err(&path, e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Index of an output directory: every file with its content hash, the
/// effective config, and whether the run got through every stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: String,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub config: PipelineConfig,
    pub files: Vec<FileEntry>,
}

impl Manifest {
    pub fn read(dir: &Path) -> Result<Manifest> {
        let path = dir.join(MANIFEST);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            path,
            message: e.to_string(),
        })
    }
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hashes every regular file in `dir` except the manifest itself.
pub(crate) fn list_files(dir: &Path) -> Result<Vec<FileEntry>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.file_name().is_some_and(|n| n != MANIFEST))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let bytes = std::fs::read(&p).map_err(|e| Error::io(&p, e))?;
            Ok(FileEntry {
                path: p.file_name().expect("file name").to_string_lossy().into_owned(),
                sha256: sha256_hex(&bytes),
                bytes: bytes.len() as u64,
            })
        })
        .collect()
}

pub(crate) fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<()> {
    write_bytes(dir, MANIFEST, &to_pretty(manifest)?)
}
