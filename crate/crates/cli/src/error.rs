//! CLI-level errors with machine-readable codes for failure reports.

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("declared flag `{property}` failed validation: {message}")]
    FlagValidation { property: String, message: String, data: Value },
    #[error("unknown {kind} `{name}`; available: [{available}]")]
    MissingName { kind: &'static str, name: String, available: String },
    #[error("point `{name}` has {got} coordinates, ground set has {expected}")]
    PointLength { name: String, expected: usize, got: usize },
    #[error("command `{command}` requires an instance declared {flag}")]
    Precondition { command: String, flag: String },
    #[error("invalid {what}: {message}")]
    Invalid { what: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] subpoly::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        use subpoly::Error as E;
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::FlagValidation { .. } => "validation",
            CliError::MissingName { .. } => "missing_name",
            CliError::PointLength { .. } => "dimension_mismatch",
            CliError::Precondition { .. } => "precondition",
            CliError::Invalid { .. } => "invalid_argument",
            CliError::Usage(_) => "usage",
            CliError::Domain(e) => match e {
                E::EmptyGroundSet
                | E::GroundSetTooLarge { .. }
                | E::CapTooLarge { .. }
                | E::LabelsLength { .. } => "ground_set",
                E::IndexOutOfRange { .. } | E::SubsetOutOfRange { .. } => "index_out_of_range",
                E::CapExceeded { .. } => "cap_exceeded",
                E::DimensionMismatch { .. } => "dimension_mismatch",
                E::NotNormalized { .. } => "not_normalized",
                E::PermutationLength { .. } | E::NotAPermutation { .. } => "invalid_permutation",
                E::PermutationInconsistent { .. } => "permutation_inconsistent",
                E::NotASupergradient => "not_a_supergradient",
                E::InvalidFamily(_) => "invalid_family",
                E::InvalidDescriptor(_) => "invalid_descriptor",
                _ => "domain",
            },
        }
    }

    /// Structured payload for failure reports, when there is one.
    pub fn data(&self) -> Option<Value> {
        match self {
            CliError::FlagValidation { data, .. } => Some(data.clone()),
            _ => None,
        }
    }
}
