use serde::Serialize;

use crate::error::CliError;
use crate::format::{MatrixFile, F64};

/// Machine-readable outcome of one command. Absent fields are omitted.
#[derive(Debug, Default, Serialize)]
pub struct Report {
    /// Command line as invoked.
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub posdef: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<F64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_pivot: Option<F64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<F64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<F64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_norm: Option<F64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_estimate: Option<F64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hermitized: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<[F64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backward_error: Option<F64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub krein: Option<KreinSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub exit_code: i32,
    pub timings: Timings,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub inside: bool,
    pub margin: F64,
    pub agrees: bool,
    pub eigenvalues: Vec<[F64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct KreinSummary {
    pub min_abs_symbol: F64,
    pub tolerance: F64,
    pub pairs: Vec<KreinPairReport>,
}

#[derive(Debug, Serialize)]
pub struct KreinPairReport {
    pub lambda: [F64; 2],
    pub mu: [F64; 2],
    pub abs_symbol: F64,
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
}

impl From<&CliError> for ErrorReport {
    fn from(e: &CliError) -> Self {
        ErrorReport { kind: e.kind(), message: e.to_string() }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Timings {
    pub total_seconds: F64,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
