//! Algebra files: JSON parsing with positioned errors and a canonical writer.

use std::fmt::Write as _;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use thiserror::Error;

use crate::linalg::{format_scalar, int, parse_scalar, unit_vector, Matrix, Scalar, Subspace};
use crate::model::{CommutativeAlgebra, Flags, HlrAlgebra, HomLeibnizAlgebra, Labels, ModelError};
use crate::tensor::StructureConstants;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid file: {0}")]
    Structure(String),
    #[error("invalid algebra: {0}")]
    Model(#[from] ModelError),
    #[error("invalid argument: {0}")]
    Argument(String),
}

/// A rational read from a JSON string `"p/q"` or an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rational;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Rational, E> {
                parse_scalar(s).map(Rational).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> Result<Rational, E> {
                Ok(Rational(int(x)))
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> Result<Rational, E> {
                i64::try_from(x).map(|x| Rational(int(x))).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, x: f64) -> Result<Rational, E> {
                Err(E::custom(format!("floating-point value {x} is not exact; write \"p/q\"")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileLabels {
    #[serde(rename = "L")]
    l: Vec<String>,
    #[serde(rename = "A")]
    a: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileFlags {
    regular: bool,
    unital: bool,
}

type Entry = (usize, usize, usize, Rational);

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    format_version: String,
    #[serde(rename = "dimL")]
    dim_l: usize,
    #[serde(rename = "dimA")]
    dim_a: usize,
    labels: Option<FileLabels>,
    #[serde(default)]
    bracket: Vec<Entry>,
    #[serde(default)]
    mul: Vec<Entry>,
    #[serde(default)]
    action: Vec<Entry>,
    #[serde(default)]
    anchor: Vec<Entry>,
    psi: Vec<Vec<Rational>>,
    phi: Vec<Vec<Rational>>,
    flags: FileFlags,
    #[serde(rename = "declared_H")]
    declared_h: Option<Vec<Vec<Rational>>>,
}

fn tensor(name: &str, dims: (usize, usize, usize), entries: &[Entry]) -> Result<StructureConstants, IoError> {
    let mut t = StructureConstants::zeros(dims.0, dims.1, dims.2);
    for (i, j, k, x) in entries {
        if *i >= dims.0 || *j >= dims.1 || *k >= dims.2 {
            return Err(IoError::Structure(format!(
                "{name} entry [{i}, {j}, {k}] out of range for dimensions {dims:?}"
            )));
        }
        t.set(*i, *j, *k, x.0.clone());
    }
    Ok(t)
}

fn matrix(name: &str, rows: &[Vec<Rational>], n: usize) -> Result<Matrix, IoError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(IoError::Structure(format!("{name} must be a {n}x{n} matrix")));
    }
    let rows = rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
    Ok(Matrix::from_rows(rows, n).expect("checked shape"))
}

pub fn parse_algebra(text: &str) -> Result<HlrAlgebra, IoError> {
    let f: AlgebraFile = serde_json::from_str(text)?;
    if f.format_version != FORMAT_VERSION {
        return Err(IoError::Structure(format!("unsupported format_version {:?}", f.format_version)));
    }
    let (nl, na) = (f.dim_l, f.dim_a);
    let labels = match f.labels {
        Some(l) => {
            if l.l.len() != nl || l.a.len() != na {
                return Err(IoError::Structure("label counts must match dimL and dimA".into()));
            }
            Labels { l: l.l, a: l.a }
        }
        None => Labels::default_for(nl, na),
    };
    let a = CommutativeAlgebra::new(tensor("mul", (na, na, na), &f.mul)?, matrix("phi", &f.phi, na)?)?;
    let l = HomLeibnizAlgebra::new(tensor("bracket", (nl, nl, nl), &f.bracket)?, matrix("psi", &f.psi, nl)?)?;
    let declared_h = match f.declared_h {
        Some(rows) => {
            if rows.iter().any(|r| r.len() != nl) {
                return Err(IoError::Structure(format!("declared_H rows must have length {nl}")));
            }
            Some(Subspace::span(nl, rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect())))
        }
        None => None,
    };
    let h = HlrAlgebra::new(
        a,
        l,
        tensor("action", (na, nl, nl), &f.action)?,
        tensor("anchor", (nl, na, na), &f.anchor)?,
        Flags {
            regular: f.flags.regular,
            unital: f.flags.unital,
        },
    )?;
    Ok(h.with_labels(labels).with_declared_h(declared_h))
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, IoError> {
    std::fs::read(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Reads and parses an algebra file, returning the raw bytes too.
pub fn read_algebra(path: &Path) -> Result<(HlrAlgebra, Vec<u8>), IoError> {
    let bytes = read_file(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| IoError::Structure(format!("not UTF-8: {e}")))?;
    Ok((parse_algebra(text)?, bytes))
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn scalar(x: &Scalar) -> String {
    quote(&format_scalar(x))
}

fn write_entries(out: &mut String, key: &str, t: &StructureConstants) {
    let lines: Vec<String> = t
        .entries()
        .map(|(i, j, k, x)| format!("    [{i}, {j}, {k}, {}]", scalar(x)))
        .collect();
    if lines.is_empty() {
        let _ = writeln!(out, "  {}: [],", quote(key));
    } else {
        let _ = writeln!(out, "  {}: [\n{}\n  ],", quote(key), lines.join(",\n"));
    }
}

fn write_rows(out: &mut String, key: &str, rows: &[Vec<Scalar>]) {
    let lines: Vec<String> = rows
        .iter()
        .map(|r| format!("    [{}]", r.iter().map(scalar).collect::<Vec<_>>().join(", ")))
        .collect();
    if lines.is_empty() {
        let _ = writeln!(out, "  {}: [],", quote(key));
    } else {
        let _ = writeln!(out, "  {}: [\n{}\n  ],", quote(key), lines.join(",\n"));
    }
}

/// Canonical text: keys sorted, one entry per line, rationals in lowest terms.
pub fn write_algebra(h: &HlrAlgebra) -> String {
    let mut out = String::from("{\n");
    write_entries(&mut out, "action", &h.action);
    write_entries(&mut out, "anchor", &h.anchor);
    write_entries(&mut out, "bracket", &h.l.bracket);
    if let Some(d) = &h.declared_h {
        write_rows(&mut out, "declared_H", d.basis());
    }
    let _ = writeln!(out, "  \"dimA\": {},", h.dim_a());
    let _ = writeln!(out, "  \"dimL\": {},", h.dim_l());
    let _ = writeln!(
        out,
        "  \"flags\": {{\"regular\": {}, \"unital\": {}}},",
        h.flags.regular, h.flags.unital
    );
    let _ = writeln!(out, "  \"format_version\": {},", quote(FORMAT_VERSION));
    let names = |xs: &[String]| xs.iter().map(|s| quote(s)).collect::<Vec<_>>().join(", ");
    let _ = writeln!(
        out,
        "  \"labels\": {{\"A\": [{}], \"L\": [{}]}},",
        names(&h.labels.a),
        names(&h.labels.l)
    );
    write_entries(&mut out, "mul", &h.a.mul);
    write_rows(&mut out, "phi", &h.phi().matrix().to_rows());
    write_rows(&mut out, "psi", &h.psi().matrix().to_rows());
    // Drop the trailing comma of the last member.
    out.truncate(out.len() - 2);
    out.push_str("\n}\n");
    out
}

/// A square matrix argument: JSON rows, `diag(a, b, ...)` or `id`.
pub fn parse_matrix_arg(text: &str, n: usize) -> Result<Matrix, IoError> {
    parse_rect_matrix_arg(text, n, n)
}

/// A `rows x cols` matrix argument; `diag` and `id` need a square shape.
pub fn parse_rect_matrix_arg(text: &str, rows: usize, cols: usize) -> Result<Matrix, IoError> {
    let t = text.trim();
    let entries: Vec<Vec<Scalar>> = if t == "id" {
        Matrix::identity(rows).to_rows()
    } else if let Some(inner) = t.strip_prefix("diag(").and_then(|s| s.strip_suffix(')')) {
        let d = inner
            .split(',')
            .map(|x| parse_scalar(x.trim()).map_err(|e| IoError::Argument(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::diagonal(&d).to_rows()
    } else {
        let parsed: Vec<Vec<Rational>> =
            serde_json::from_str(t).map_err(|e| IoError::Argument(format!("matrix: {e}")))?;
        parsed.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect()
    };
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(IoError::Argument(format!("expected a {rows}x{cols} matrix")));
    }
    Ok(Matrix::from_rows(entries, cols).expect("checked shape"))
}

/// A subspace of `L`: JSON rows, or `span{label, ...}` over the basis labels.
pub fn parse_subspace_arg(text: &str, h: &HlrAlgebra) -> Result<Subspace, IoError> {
    let n = h.dim_l();
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("span{").and_then(|s| s.strip_suffix('}')) {
        let mut vs = Vec::new();
        for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let i = h
                .labels
                .l
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| IoError::Argument(format!("unknown basis label {name:?}")))?;
            vs.push(unit_vector(n, i));
        }
        return Ok(Subspace::span(n, vs));
    }
    let rows: Vec<Vec<Rational>> = serde_json::from_str(t).map_err(|e| IoError::Argument(format!("subspace: {e}")))?;
    if rows.iter().any(|r| r.len() != n) {
        return Err(IoError::Argument(format!("subspace rows must have length {n}")));
    }
    Ok(Subspace::span(n, rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect())))
}
