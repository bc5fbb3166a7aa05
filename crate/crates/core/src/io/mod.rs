//! Problem files, command dispatch and report emission.

mod problem;
mod report;
mod text;

use thiserror::Error;

pub use problem::{
    emit_problem, format_field, parse_problem, problem_from_doc, problem_to_doc, Mode, Problem, ProblemDoc, QuiverDoc,
    QuiverProblem, RepresentationDoc, SegmentDoc, SheafDoc,
};
pub use report::*;
pub use text::report_text;

use crate::quiver::QuiverError;
use crate::segment::SegmentError;
use crate::sheaf::SheafError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid value at {path}: {message}")]
    Value { path: String, message: String },
    #[error("{command} needs a {needed} problem, this one is {found}")]
    ModeMismatch { command: &'static str, needed: &'static str, found: &'static str },
    #[error("{0}")]
    Read(String),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Segment(#[from] SegmentError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl IoError {
    /// 1 for bad input, 2 for a violated internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            IoError::Invariant(_) | IoError::Segment(SegmentError::Internal(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Serializes a report. JSON output is canonical: the same report always
/// gives the same bytes.
pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => report_text(report),
    }
}

/// Parses a JSON report back.
pub fn parse_report(bytes: &[u8]) -> Result<Report, IoError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(&mut de)
        .map_err(|e| IoError::Schema { path: e.path().to_string(), message: e.inner().to_string() })
}
