//! File formats, reports and the command-line front end for `lyaploc-core`.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{execute, Cli, Command};
pub use error::CliError;
pub use format::{matrix_to_string, parse_matrix, read_matrix, write_matrix, MatrixFile, F64};
pub use report::Report;
