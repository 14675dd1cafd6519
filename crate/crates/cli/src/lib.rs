//! Command-line front end for the `subpoly` toolkit: loads instance files,
//! dispatches to library operations, and emits deterministic JSON reports.

pub mod commands;
pub mod error;
pub mod instance;
pub mod report;
pub mod sweep;

/// Environment variable that overrides the exhaustive enumeration cap.
pub const CAP_ENV_VAR: &str = "SUBPOLY_CAP";
