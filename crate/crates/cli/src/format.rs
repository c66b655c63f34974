//! Matrix file format: a small JSON document with an explicit dimension and
//! complex entries as `[re, im]` pairs.
//!
//! The writer is canonical: floats are rendered with 17 significant digits
//! (`{:.16e}`), which round-trips every finite `f64` exactly, so
//! write -> read -> write is byte-identical.

use std::fmt;
use std::path::{Path, PathBuf};

use cohbound_core::nalgebra::{DMatrix, DVector};
use cohbound_core::num_complex::Complex64;
use cohbound_core::{DensityMatrix, HermitianOperator, PureState};
use serde_json::Value;

pub const KIND_DENSITY: &str = "density";
pub const KIND_OBSERVABLE: &str = "observable";
pub const KIND_STATE_VECTOR: &str = "state_vector";

/// Error from any CLI-level operation, carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// The document is not a valid matrix file (exit 2).
    Parse { path: PathBuf, message: String },
    /// A core invariant or precondition failed (exit 3 or 4).
    Core(cohbound_core::Error),
    /// Filesystem failure (exit 5).
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Core(e) if e.is_invariant_violation() => 3,
            CliError::Core(e) if e.is_precondition_violation() => 4,
            CliError::Core(_) => 1,
            CliError::Io { .. } => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { path, message } => {
                write!(f, "{}: {}", path.display(), message)
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {}", path.display(), source),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cohbound_core::Error> for CliError {
    fn from(e: cohbound_core::Error) -> Self {
        CliError::Core(e)
    }
}

/// Entries of a matrix file: square row-major for operators, a single
/// column for state vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixPayload {
    Square(Vec<Vec<Complex64>>),
    Vector(Vec<Complex64>),
}

/// Parsed matrix file prior to the domain-type invariant checks.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub kind: String,
    pub dim: usize,
    pub payload: MatrixPayload,
}

impl MatrixFile {
    pub fn density(rho: &DensityMatrix) -> Self {
        MatrixFile {
            kind: KIND_DENSITY.to_owned(),
            dim: rho.dim(),
            payload: square_payload(rho.dmatrix()),
        }
    }

    pub fn observable(a: &HermitianOperator) -> Self {
        MatrixFile {
            kind: KIND_OBSERVABLE.to_owned(),
            dim: a.dim(),
            payload: square_payload(a.dmatrix()),
        }
    }

    pub fn state_vector(psi: &PureState) -> Self {
        MatrixFile {
            kind: KIND_STATE_VECTOR.to_owned(),
            dim: psi.dim(),
            payload: MatrixPayload::Vector(psi.amplitudes().iter().copied().collect()),
        }
    }
}

fn square_payload(m: &DMatrix<Complex64>) -> MatrixPayload {
    let d = m.nrows();
    MatrixPayload::Square(
        (0..d)
            .map(|i| (0..d).map(|j| m[(i, j)]).collect())
            .collect(),
    )
}

/// Parses the document; structural errors only, no domain invariants.
pub fn parse_matrix_file(text: &str) -> Result<MatrixFile, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = value
        .as_object()
        .ok_or("top-level value must be an object")?;
    for key in obj.keys() {
        if key != "kind" && key != "dim" && key != "matrix" {
            return Err(format!("unknown field \"{key}\""));
        }
    }
    let kind = obj
        .get("kind")
        .ok_or("missing field \"kind\"")?
        .as_str()
        .ok_or("\"kind\" must be a string")?;
    if ![KIND_DENSITY, KIND_OBSERVABLE, KIND_STATE_VECTOR].contains(&kind) {
        return Err(format!(
            "\"kind\" must be one of \"{KIND_DENSITY}\", \"{KIND_OBSERVABLE}\", \
             \"{KIND_STATE_VECTOR}\", got \"{kind}\""
        ));
    }
    let dim = obj
        .get("dim")
        .ok_or("missing field \"dim\"")?
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or("\"dim\" must be a positive integer")? as usize;
    let matrix = obj
        .get("matrix")
        .ok_or("missing field \"matrix\"")?
        .as_array()
        .ok_or("\"matrix\" must be an array")?;

    let payload = if kind == KIND_STATE_VECTOR {
        if matrix.len() != dim {
            return Err(format!(
                "state_vector \"matrix\" must hold {dim} entries, got {}",
                matrix.len()
            ));
        }
        MatrixPayload::Vector(
            matrix
                .iter()
                .enumerate()
                .map(|(i, v)| parse_pair(v).map_err(|e| format!("entry {i}: {e}")))
                .collect::<Result<_, _>>()?,
        )
    } else {
        if matrix.len() != dim {
            return Err(format!(
                "\"matrix\" must hold {dim} rows, got {}",
                matrix.len()
            ));
        }
        let mut rows = Vec::with_capacity(dim);
        for (i, row) in matrix.iter().enumerate() {
            let row = row.as_array().ok_or(format!("row {i} must be an array"))?;
            if row.len() != dim {
                return Err(format!(
                    "row {i} must hold {dim} entries, got {}",
                    row.len()
                ));
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .map(|(j, v)| parse_pair(v).map_err(|e| format!("entry ({i},{j}): {e}")))
                    .collect::<Result<_, _>>()?,
            );
        }
        MatrixPayload::Square(rows)
    };

    Ok(MatrixFile {
        kind: kind.to_owned(),
        dim,
        payload,
    })
}

fn parse_pair(v: &Value) -> Result<Complex64, String> {
    let pair = v.as_array().ok_or("expected a [re, im] pair")?;
    if pair.len() != 2 {
        return Err(format!(
            "expected a [re, im] pair, got {} values",
            pair.len()
        ));
    }
    let re = pair[0].as_f64().ok_or("re must be a number")?;
    let im = pair[1].as_f64().ok_or("im must be a number")?;
    if !re.is_finite() || !im.is_finite() {
        return Err("entries must be finite".to_owned());
    }
    Ok(Complex64::new(re, im))
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_matrix_file(&text).map_err(|message| CliError::Parse {
        path: path.to_owned(),
        message,
    })
}

/// Canonical rendering: one matrix row (or vector entry) per line,
/// 17-significant-digit floats.
pub fn canonical_string(file: &MatrixFile) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"kind\": \"{}\",\n", file.kind));
    out.push_str(&format!("  \"dim\": {},\n", file.dim));
    out.push_str("  \"matrix\": [\n");
    match &file.payload {
        MatrixPayload::Square(rows) => {
            for (i, row) in rows.iter().enumerate() {
                out.push_str("    [");
                for (j, z) in row.iter().enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&pair_string(*z));
                }
                out.push(']');
                if i + 1 < rows.len() {
                    out.push(',');
                }
                out.push('\n');
            }
        }
        MatrixPayload::Vector(entries) => {
            for (i, z) in entries.iter().enumerate() {
                out.push_str("    ");
                out.push_str(&pair_string(*z));
                if i + 1 < entries.len() {
                    out.push(',');
                }
                out.push('\n');
            }
        }
    }
    out.push_str("  ]\n}\n");
    out
}

fn pair_string(z: Complex64) -> String {
    format!("[{}, {}]", float_string(z.re), float_string(z.im))
}

/// 17 significant digits; exact round-trip for every finite `f64`.
pub fn float_string(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_matrix_file(path: &Path, file: &MatrixFile) -> Result<(), CliError> {
    std::fs::write(path, canonical_string(file)).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Interprets a parsed file as a state: accepts `density` and
/// `state_vector` kinds.
pub fn density_from_file(path: &Path, file: &MatrixFile) -> Result<DensityMatrix, CliError> {
    match (file.kind.as_str(), &file.payload) {
        (KIND_DENSITY, MatrixPayload::Square(rows)) => {
            Ok(DensityMatrix::from_dmatrix(square_matrix(file.dim, rows))?)
        }
        (KIND_STATE_VECTOR, MatrixPayload::Vector(entries)) => {
            let psi = PureState::new(DVector::from_vec(entries.clone()))?;
            Ok(psi.density())
        }
        _ => Err(CliError::Parse {
            path: path.to_owned(),
            message: format!(
                "expected kind \"{KIND_DENSITY}\" or \"{KIND_STATE_VECTOR}\" for a state, \
                 got \"{}\"",
                file.kind
            ),
        }),
    }
}

/// Interprets a parsed file as an observable (kind `observable`).
pub fn observable_from_file(path: &Path, file: &MatrixFile) -> Result<HermitianOperator, CliError> {
    match (file.kind.as_str(), &file.payload) {
        (KIND_OBSERVABLE, MatrixPayload::Square(rows)) => Ok(HermitianOperator::from_dmatrix(
            square_matrix(file.dim, rows),
        )?),
        _ => Err(CliError::Parse {
            path: path.to_owned(),
            message: format!(
                "expected kind \"{KIND_OBSERVABLE}\" for an observable, got \"{}\"",
                file.kind
            ),
        }),
    }
}

fn square_matrix(dim: usize, rows: &[Vec<Complex64>]) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |i, j| rows[i][j])
}
