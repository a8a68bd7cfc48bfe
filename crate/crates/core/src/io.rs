//! File formats: JSON documents for configuration-like artifacts, JSON Lines
//! for streams, and content hashing for provenance.
//!
//! Hashing uses the compact JSON encoding of a value. Struct fields serialize
//! in declaration order and maps are sorted, so equal values hash equally on
//! every platform.

use std::fs;
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::calibration::Signature;
use crate::error::{Error, Result};
use crate::localizer::PositionEstimate;
use crate::metrics::EcdfPoint;

/// Hex SHA-256 of the value's compact JSON encoding.
pub fn sha256_of<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("value must be JSON-serializable");
    hex::encode(Sha256::digest(bytes))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::File {
        path: path.to_owned(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        context: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("value must be JSON-serializable");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::File {
        path: path.to_owned(),
        source: e,
    })
}

/// One JSON record per line; blank lines are ignored.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = fs::read_to_string(path).map_err(|e| Error::File {
        path: path.to_owned(),
        source: e,
    })?;
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(line).map_err(|e| Error::Parse {
            context: format!("{}:{}", path.display(), idx + 1),
            message: e.to_string(),
        })?;
        records.push(record);
    }
    Ok(records)
}

pub fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
    let mut text = String::new();
    for record in records {
        text.push_str(&serde_json::to_string(record).expect("record must be JSON-serializable"));
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| Error::File {
        path: path.to_owned(),
        source: e,
    })
}

/// Flat estimate record, the line format of the localizer's batch output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub timestamp: f64,
    pub x: f64,
    pub y: f64,
}

impl From<&PositionEstimate> for EstimateRecord {
    fn from(e: &PositionEstimate) -> Self {
        Self {
            timestamp: e.timestamp,
            x: e.position.x,
            y: e.position.y,
        }
    }
}

/// The signature database document produced by calibration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureDb {
    /// Hash of the plan the positions were clamped and room-resolved against.
    pub plan_sha256: String,
    pub max_skew: f64,
    pub dropped_outside_rooms: usize,
    pub fixes_without_rss: usize,
    pub signatures: Vec<Signature>,
}

/// Two-column ECDF table for external plotting.
pub fn write_ecdf_table(path: &Path, ecdf: &[EcdfPoint]) -> Result<()> {
    let mut text = String::from("# error_m\tcum_fraction\n");
    for point in ecdf {
        text.push_str(&format!("{}\t{}\n", point.value, point.fraction));
    }
    fs::write(path, text).map_err(|e| Error::File {
        path: path.to_owned(),
        source: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Doc {
        name: String,
        values: BTreeMap<String, f64>,
    }

    fn doc() -> Doc {
        Doc {
            name: "x".into(),
            values: [("b".to_string(), 2.0), ("a".to_string(), 1.5)]
                .into_iter()
                .collect(),
        }
    }

    #[test]
    fn json_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("doc.json");
        write_json(&path, &doc()).unwrap();
        let back: Doc = read_json(&path).unwrap();
        assert_eq!(back, doc());
    }

    #[test]
    fn jsonl_roundtrip_skips_blank_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("recs.jsonl");
        let records = vec![
            EstimateRecord { timestamp: 0.0, x: 1.0, y: 2.0 },
            EstimateRecord { timestamp: 0.1, x: 1.5, y: 2.5 },
        ];
        write_jsonl(&path, &records).unwrap();
        let mut text = fs::read_to_string(&path).unwrap();
        text.push('\n');
        fs::write(&path, text).unwrap();
        let back: Vec<EstimateRecord> = read_jsonl(&path).unwrap();
        assert_eq!(back, records);
    }

    #[test]
    fn parse_errors_carry_path_and_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        fs::write(&path, "{\"timestamp\":0,\"x\":1,\"y\":2}\nnot json\n").unwrap();
        let err = read_jsonl::<EstimateRecord>(&path).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bad.jsonl:2"), "{msg}");
    }

    #[test]
    fn missing_file_reports_path() {
        let err = read_json::<Doc>(Path::new("/nonexistent/nope.json")).unwrap_err();
        assert!(matches!(err, Error::File { .. }));
        assert!(err.to_string().contains("nope.json"));
    }

    #[test]
    fn digest_is_stable_and_content_sensitive() {
        let a = sha256_of(&doc());
        let b = sha256_of(&doc());
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
        let mut other = doc();
        other.values.insert("c".into(), 0.0);
        assert_ne!(a, sha256_of(&other));
    }
}
