//! JSON gate and channel files.
//!
//! ```json
//! {"dim": 2, "unitary": [[[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
//!                        [[0.7071067811865476, 0.0], [-0.7071067811865476, 0.0]]]}
//! {"dim": 2, "kraus": [ <matrix>, <matrix>, ... ]}
//! ```
//!
//! A matrix is an array of `dim` rows, each an array of `dim` `[re, im]`
//! pairs.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, UnitaryMatrix};

/// The two shapes a channel file can take.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelFile {
    Unitary(ComplexMatrix),
    Kraus(Vec<ComplexMatrix>),
}

impl ChannelFile {
    /// Kraus operators (a single one for the unitary form).
    pub fn into_ops(self) -> Vec<ComplexMatrix> {
        match self {
            Self::Unitary(m) => vec![m],
            Self::Kraus(ops) => ops,
        }
    }
}

fn parse_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn parse_matrix(value: &Value, dim: usize, label: &str, path: &Path) -> Result<ComplexMatrix> {
    let rows = value
        .as_array()
        .ok_or_else(|| parse_err(path, format!("{label}: expected an array of rows")))?;
    if rows.len() != dim {
        return Err(parse_err(
            path,
            format!("{label}: has {} rows, expected dim = {dim}", rows.len()),
        ));
    }
    let mut out = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| parse_err(path, format!("{label}: row {i} is not an array")))?;
        if entries.len() != dim {
            return Err(parse_err(
                path,
                format!(
                    "{label}: row {i} has {} entries, expected {dim}",
                    entries.len()
                ),
            ));
        }
        let mut parsed = Vec::with_capacity(dim);
        for (j, z) in entries.iter().enumerate() {
            let pair = z.as_array().filter(|p| p.len() == 2).and_then(|p| {
                let re = p[0].as_f64()?;
                let im = p[1].as_f64()?;
                Some(c(re, im))
            });
            match pair {
                Some(z) if z.re.is_finite() && z.im.is_finite() => parsed.push(z),
                _ => {
                    return Err(parse_err(
                        path,
                        format!(
                            "{label}: row {i}, column {j}: expected a [re, im] pair of numbers"
                        ),
                    ))
                }
            }
        }
        out.push(parsed);
    }
    ComplexMatrix::from_rows(out).map_err(|e| parse_err(path, format!("{label}: {e}")))
}

/// Parses channel JSON. `path` only labels error messages.
pub fn parse_channel(text: &str, path: &Path) -> Result<ChannelFile> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| parse_err(path, format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| parse_err(path, "top level must be a JSON object"))?;
    let dim =
        obj.get("dim")
            .and_then(Value::as_u64)
            .filter(|&d| d >= 1)
            .ok_or_else(|| parse_err(path, "\"dim\" must be a positive integer"))? as usize;
    match (obj.get("unitary"), obj.get("kraus")) {
        (Some(u), None) => Ok(ChannelFile::Unitary(parse_matrix(u, dim, "unitary", path)?)),
        (None, Some(k)) => {
            let list = k
                .as_array()
                .filter(|l| !l.is_empty())
                .ok_or_else(|| parse_err(path, "\"kraus\" must be a nonempty array of matrices"))?;
            let ops = list
                .iter()
                .enumerate()
                .map(|(m, v)| parse_matrix(v, dim, &format!("kraus[{m}]"), path))
                .collect::<Result<Vec<_>>>()?;
            Ok(ChannelFile::Kraus(ops))
        }
        (Some(_), Some(_)) => Err(parse_err(
            path,
            "give either \"unitary\" or \"kraus\", not both",
        )),
        (None, None) => Err(parse_err(path, "missing \"unitary\" or \"kraus\"")),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a file in the unitary form and checks unitarity.
pub fn read_unitary(path: &Path) -> Result<UnitaryMatrix> {
    match parse_channel(&read_text(path)?, path)? {
        ChannelFile::Unitary(m) => UnitaryMatrix::new(m),
        ChannelFile::Kraus(mut ops) if ops.len() == 1 => UnitaryMatrix::new(ops.remove(0)),
        ChannelFile::Kraus(_) => Err(parse_err(
            path,
            "expected a single unitary, found several Kraus operators",
        )),
    }
}

/// Reads either form and checks trace preservation.
pub fn read_channel(path: &Path) -> Result<KrausChannel> {
    KrausChannel::new(parse_channel(&read_text(path)?, path)?.into_ops())
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        m.rows()
            .map(|row| Value::Array(row.iter().map(|z| json!([z.re, z.im])).collect()))
            .collect(),
    )
}

/// Gate file text (one line, trailing newline).
pub fn unitary_to_json(u: &UnitaryMatrix) -> String {
    let v = json!({ "dim": u.dim(), "unitary": matrix_json(u.matrix()) });
    format!("{v}\n")
}

/// Channel file text in the Kraus form.
pub fn channel_to_json(ch: &KrausChannel) -> String {
    let ops: Vec<Value> = ch.ops().iter().map(matrix_json).collect();
    let v = json!({ "dim": ch.dim(), "kraus": ops });
    format!("{v}\n")
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: PathBuf::from(path),
        source,
    })
}

pub fn write_unitary(path: &Path, u: &UnitaryMatrix) -> Result<()> {
    write_text(path, &unitary_to_json(u))
}

pub fn write_channel(path: &Path, ch: &KrausChannel) -> Result<()> {
    write_text(path, &channel_to_json(ch))
}
