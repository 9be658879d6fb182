//! JSON matrix and coefficient files.
//!
//! Matrices are `{"rows": r, "cols": c, "entries": [[re, im], ...]}` in
//! row-major order. Floats are written with 17 significant digits so every
//! value re-parses to the same double.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use lyaploc_core::{Complex, ComplexMatrix, LyapunovForm, RhsSign};
use serde::de::Deserializer;
use serde::ser::{Error as _, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::CliError;

/// `f64` that serializes as `d.dddddddddddddddde±x` and non-finite values as `null`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct F64(pub f64);

impl fmt::Display for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{:.16e}", self.0)
        } else {
            f.write_str("null")
        }
    }
}

impl Serialize for F64 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawValue::from_string(self.to_string()).map_err(S::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F64 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        f64::deserialize(d).map(F64)
    }
}

impl From<f64> for F64 {
    fn from(x: f64) -> Self {
        F64(x)
    }
}

pub fn complex_pair(z: Complex) -> [F64; 2] {
    [F64(z.re), F64(z.im)]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[F64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixFile { rows: m.rows(), cols: m.cols(), entries: m.as_slice().iter().map(|&z| complex_pair(z)).collect() }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        if self.rows == 0 || self.cols == 0 {
            return Err("matrix must have at least one row and one column".into());
        }
        if self.entries.len() != self.rows * self.cols {
            return Err(format!(
                "expected {} entries for a {}x{} matrix, found {}",
                self.rows * self.cols,
                self.rows,
                self.cols,
                self.entries.len()
            ));
        }
        let data = self.entries.iter().map(|[re, im]| Complex::new(re.0, im.0)).collect();
        ComplexMatrix::new(self.rows, self.cols, data).map_err(|e| e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn parse_error(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_path_buf(), message: message.into() }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, String> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    file.to_matrix()
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    parse_matrix(&read_text(path)?).map_err(|m| parse_error(path, m))
}

pub fn matrix_to_string(m: &ComplexMatrix) -> String {
    let mut s = serde_json::to_string_pretty(&MatrixFile::from_matrix(m)).expect("matrix serializes");
    s.push('\n');
    s
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<(), CliError> {
    fs::write(path, matrix_to_string(m)).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Coefficient file: `a_jk` grid (row `j` = power of `B`, column `k` =
/// power of `A`), right-hand-side sign and an optional `B` matrix path.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffFile {
    order: usize,
    coeffs: Vec<Vec<[F64; 2]>>,
    #[serde(default = "default_sign")]
    rhs_sign: i32,
    #[serde(default)]
    b: Option<PathBuf>,
}

fn default_sign() -> i32 {
    1
}

pub struct Coefficients {
    pub form: LyapunovForm,
    /// Resolved against the coefficient file's directory.
    pub b_path: Option<PathBuf>,
}

pub fn read_coefficients(path: &Path) -> Result<Coefficients, CliError> {
    let file: CoeffFile = serde_json::from_str(&read_text(path)?).map_err(|e| parse_error(path, e.to_string()))?;
    let size = file.order + 1;
    if file.coeffs.len() != size || file.coeffs.iter().any(|row| row.len() != size) {
        return Err(parse_error(path, format!("coefficient grid must be {size}x{size}")));
    }
    let rhs_sign = RhsSign::from_value(file.rhs_sign).ok_or_else(|| parse_error(path, "rhs_sign must be 1 or -1"))?;
    let coeffs = file.coeffs.iter().flatten().map(|[re, im]| Complex::new(re.0, im.0)).collect();
    let form = LyapunovForm::new(file.order, coeffs, rhs_sign).map_err(|e| parse_error(path, e.to_string()))?;
    let b_path = file.b.map(|b| if b.is_relative() { path.parent().unwrap_or(Path::new("")).join(b) } else { b });
    Ok(Coefficients { form, b_path })
}
