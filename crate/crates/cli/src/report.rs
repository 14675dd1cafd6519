//! The report every invocation prints on standard output.
//!
//! Reports are deterministic for fixed inputs apart from `wall_time_ms`,
//! which consumers strip before comparing. The exit code mirrors `status`:
//! 0 for `ok`, 2 for `negative` (a successful computation whose mathematical
//! answer is "no"), 1 for `error`.

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Negative,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance_digest: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn success(
        command: String,
        digest: Option<String>,
        result: Value,
        negative: bool,
        wall_time_ms: f64,
    ) -> Self {
        Report {
            format_version: FORMAT_VERSION,
            tool_version: TOOL_VERSION,
            command,
            instance_digest: digest,
            status: if negative { Status::Negative } else { Status::Ok },
            result: Some(result),
            error: None,
            wall_time_ms,
        }
    }

    pub fn failure(
        command: String,
        digest: Option<String>,
        error: &CliError,
        wall_time_ms: f64,
    ) -> Self {
        Report {
            format_version: FORMAT_VERSION,
            tool_version: TOOL_VERSION,
            command,
            instance_digest: digest,
            status: Status::Error,
            result: None,
            error: Some(ErrorBody {
                code: error.code().to_string(),
                message: error.to_string(),
                data: error.data(),
            }),
            wall_time_ms,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Negative => 2,
            Status::Error => 1,
        }
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
