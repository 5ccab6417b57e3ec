//! Instance and report documents, text rendering, and the claim-status page.
//!
//! Both document kinds are JSON objects carrying a versioned `schema` field:
//! [`INSTANCE_SCHEMA`] for instances and [`REPORT_SCHEMA`] for search
//! reports. Elements may be written by label (strings) or by index
//! (integers) anywhere an element is expected.

mod doc;
mod report;
pub mod status;
pub mod text;

use thiserror::Error;

pub use doc::{parse_instance, ElementRef, InstanceDoc, MapDoc, ParsedInstance, PartitionDoc, UniverseDoc};
pub use report::{
    emit_report, parse_report, revalidate, write_report, CounterexampleDoc, ReportDoc, TalliesDoc,
    WitnessDoc,
};

pub const INSTANCE_SCHEMA: &str = "roughmap/instance-v1";
pub const REPORT_SCHEMA: &str = "roughmap/report-v1";

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl DocError {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        DocError::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn from_json(e: serde_json::Error) -> Self {
        DocError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Which kind of document a JSON text is, judged by its `schema` field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocKind {
    Instance,
    Report,
}

pub fn sniff(text: &str) -> Result<DocKind, DocError> {
    #[derive(serde::Deserialize)]
    struct Probe {
        schema: Option<String>,
    }
    let probe: Probe = serde_json::from_str(text).map_err(DocError::from_json)?;
    match probe.schema.as_deref() {
        Some(INSTANCE_SCHEMA) => Ok(DocKind::Instance),
        Some(REPORT_SCHEMA) => Ok(DocKind::Report),
        Some(other) => Err(DocError::validation("schema", format!("unknown schema `{other}`"))),
        None => Err(DocError::validation("schema", "missing")),
    }
}
