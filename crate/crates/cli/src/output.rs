//! Run headers, input hashing and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub role: &'static str,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(role: &'static str, bytes: &[u8]) -> Self {
        InputDigest {
            role,
            sha256: sha256_hex(bytes),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Every JSON document the tool emits: the analysis parameters, hashes of
/// the inputs, and the result.
#[derive(Serialize)]
struct Document<'a, C: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: &'a C,
    inputs: &'a [InputDigest],
    result: &'a RawValue,
}

pub fn document<C: Serialize>(
    command: &str,
    config: &C,
    inputs: &[InputDigest],
    result_json: String,
) -> String {
    let result = RawValue::from_string(result_json).expect("results are valid JSON");
    let mut text = serde_json::to_string_pretty(&Document {
        schema_version: svdyn::SCHEMA_VERSION,
        command,
        config,
        inputs,
        result: &result,
    })
    .expect("document serializes");
    text.push('\n');
    text
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// followed by a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Writes to `path`, or to standard output when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}
