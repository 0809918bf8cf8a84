//! Channel and observable files.
//!
//! A channel file is
//!
//! ```json
//! {
//!   "dim": 2,
//!   "kraus": [
//!     [
//!       [[1.0, 0.0], [0.0, 0.0]],
//!       [[0.0, 0.0], [0.8, 0.0]]
//!     ]
//!   ]
//! }
//! ```
//!
//! with every entry an `[re, im]` pair. Observable files carry a single
//! `"matrix"` in the same encoding. Writing is canonical: fixed field order,
//! one matrix row per line, shortest round-trip float formatting and a
//! trailing newline, so write -> read -> write is byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::channel::QuantumChannel;
use crate::error::Error;
use crate::numkernel::{c64, ComplexMatrix};

/// Default trace-preservation tolerance when reading channel files.
pub const FILE_TOL: f64 = 1e-8;

/// Failure to turn file contents into a channel or observable.
#[derive(Debug, Clone, PartialEq)]
pub enum FileError {
    /// Unreadable, malformed JSON or wrong shape.
    Parse(String),
    /// Well-formed but not a valid channel.
    Invalid(Error),
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FileError::Parse(msg) => f.write_str(msg),
            FileError::Invalid(e) => write!(f, "invalid channel: {e}"),
        }
    }
}

type Entry = [f64; 2];
type RawMatrix = Vec<Vec<Entry>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    dim: usize,
    kraus: Vec<RawMatrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObservable {
    dim: usize,
    matrix: RawMatrix,
}

fn to_matrix(raw: &RawMatrix, dim: usize, field: &str) -> Result<ComplexMatrix, FileError> {
    if raw.len() != dim {
        return Err(FileError::Parse(format!("{field}: {} rows, expected {dim}", raw.len())));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (r, row) in raw.iter().enumerate() {
        if row.len() != dim {
            return Err(FileError::Parse(format!(
                "{field}[{r}]: {} entries, expected {dim}",
                row.len()
            )));
        }
        data.extend(row.iter().map(|[re, im]| c64(*re, *im)));
    }
    ComplexMatrix::new(dim, dim, data).map_err(|e| FileError::Parse(format!("{field}: {e}")))
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T, FileError> {
    serde_json::from_str(text).map_err(|e| FileError::Parse(format!("{what}: {e}")))
}

/// Parses a channel file, rejecting maps whose trace-preservation residual
/// exceeds `tol`.
pub fn parse_channel(text: &str, tol: f64) -> Result<QuantumChannel, FileError> {
    let raw: RawChannel = parse_json(text, "channel file")?;
    if raw.dim == 0 {
        return Err(FileError::Parse("dim: must be positive".into()));
    }
    if raw.kraus.is_empty() {
        return Err(FileError::Parse("kraus: at least one operator required".into()));
    }
    let kraus = raw
        .kraus
        .iter()
        .enumerate()
        .map(|(i, m)| to_matrix(m, raw.dim, &format!("kraus[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    QuantumChannel::trace_preserving(kraus, tol).map_err(FileError::Invalid)
}

pub fn parse_observable(text: &str) -> Result<ComplexMatrix, FileError> {
    let raw: RawObservable = parse_json(text, "observable file")?;
    to_matrix(&raw.matrix, raw.dim, "matrix")
}

fn read(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|e| FileError::Parse(format!("{}: {e}", path.display())))
}

pub fn read_channel(path: &Path, tol: f64) -> Result<QuantumChannel, FileError> {
    parse_channel(&read(path)?, tol).map_err(|e| match e {
        FileError::Parse(msg) => FileError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn read_observable(path: &Path) -> Result<ComplexMatrix, FileError> {
    parse_observable(&read(path)?).map_err(|e| match e {
        FileError::Parse(msg) => FileError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Shortest decimal that parses back to the same `f64`; negative zero is
/// written as `0.0`.
fn number(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:?}")
}

fn write_matrix(out: &mut String, m: &ComplexMatrix, indent: &str) {
    out.push_str("[\n");
    for r in 0..m.rows() {
        let entries: Vec<String> = m
            .row(r)
            .iter()
            .map(|z| format!("[{}, {}]", number(z.re), number(z.im)))
            .collect();
        let sep = if r + 1 < m.rows() { "," } else { "" };
        let _ = writeln!(out, "{indent}  [{}]{sep}", entries.join(", "));
    }
    out.push_str(indent);
    out.push(']');
}

pub fn format_channel(phi: &QuantumChannel) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\n  \"dim\": {},\n  \"kraus\": [\n", phi.dim());
    let k = phi.kraus_count();
    for (i, a) in phi.kraus().iter().enumerate() {
        out.push_str("    ");
        write_matrix(&mut out, a, "    ");
        out.push_str(if i + 1 < k { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn format_observable(h: &ComplexMatrix) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\n  \"dim\": {},\n  \"matrix\": ", h.rows());
    write_matrix(&mut out, h, "  ");
    out.push_str("\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn decaying_file_layout() {
        let text = format_channel(&zoo::decaying_channel(0.36).unwrap());
        let expected = "{\n  \"dim\": 2,\n  \"kraus\": [\n    [\n      [[0.0, 0.0], [0.6, 0.0]],\n      [[0.0, 0.0], [0.0, 0.0]]\n    ],\n    [\n      [[1.0, 0.0], [0.0, 0.0]],\n      [[0.0, 0.0], [0.8, 0.0]]\n    ]\n  ]\n}\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn round_trip_is_byte_identical() {
        for seed in 0..20 {
            let phi = zoo::random_channel(3, 1 + seed as usize % 4, seed).unwrap();
            let text = format_channel(&phi);
            let back = parse_channel(&text, FILE_TOL).unwrap();
            assert_eq!(back, phi);
            assert_eq!(format_channel(&back), text);
        }
    }

    #[test]
    fn observable_round_trip() {
        let h = zoo::random_hamiltonian(3, 2).unwrap();
        let text = format_observable(&h);
        assert_eq!(parse_observable(&text).unwrap(), h);
    }

    #[test]
    fn non_trace_preserving_is_invalid() {
        let text = "{\"dim\": 2, \"kraus\": [[[[1, 0], [0, 0]], [[0, 0], [0.9486832980505138, 0]]]]}";
        match parse_channel(text, FILE_TOL) {
            Err(FileError::Invalid(Error::NotTracePreserving { residual })) => {
                assert!((residual - 0.1).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_errors_name_the_field() {
        let text = "{\"dim\": 2, \"kraus\": [[[[1, 0], [0, 0]], [[0, 0]]]]}";
        let Err(FileError::Parse(msg)) = parse_channel(text, FILE_TOL) else {
            panic!("expected parse error")
        };
        assert!(msg.contains("kraus[0][1]"), "{msg}");

        let Err(FileError::Parse(msg)) = parse_channel("{\"dim\": 2,\n \"kraus\": [}", FILE_TOL) else {
            panic!("expected parse error")
        };
        assert!(msg.contains("line 2"), "{msg}");

        assert!(matches!(
            parse_channel("{\"dim\": 1, \"kraus\": [[[[1, 0]]]], \"extra\": 0}", FILE_TOL),
            Err(FileError::Parse(_))
        ));
    }
}
