//! The `report-v1` envelope every subcommand emits.
//!
//! Field groups and their determinism contract:
//! - `manifest` echoes the inputs; its timestamps are the only volatile part.
//! - `outcome` is a pure function of (subcommand, parameters, seed, version).
//! - `diagnostics` (wall time, evaluation counters, thread count) varies
//!   run to run and is excluded from the contract.
//!
//! The schema lives at `docs/report-v1.schema.json`.

use chrono::{DateTime, Utc};
use serde::Serialize;

pub const SCHEMA: &str = "report-v1";

/// Exit code for honest non-success outcomes (search exhausted, oracle
/// unresolved).
pub const CMD_EXHAUSTED: u8 = 3;
/// Exit code when a red witness is found — the implementation falsifier.
pub const CMD_WITNESS: u8 = 5;
/// Exit code when a tower level would exceed the bit-width cap.
pub const CMD_GROUND_TOO_LARGE: u8 = 6;

#[derive(Serialize)]
pub struct Envelope {
    pub schema: &'static str,
    pub manifest: Manifest,
    pub outcome: serde_json::Value,
    pub diagnostics: Diagnostics,
}

#[derive(Serialize)]
pub struct Manifest {
    pub subcommand: &'static str,
    pub version: &'static str,
    pub params: serde_json::Value,
    pub started_at: String,
    pub finished_at: String,
}

#[derive(Serialize)]
pub struct Diagnostics {
    pub wall_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuples_evaluated: Option<u64>,
    pub threads: usize,
}

impl Envelope {
    pub fn new(
        subcommand: &'static str,
        params: serde_json::Value,
        started_at: DateTime<Utc>,
        finished_at: DateTime<Utc>,
        outcome: serde_json::Value,
        diagnostics: Diagnostics,
    ) -> Self {
        Envelope {
            schema: SCHEMA,
            manifest: Manifest {
                subcommand,
                version: env!("CARGO_PKG_VERSION"),
                params,
                started_at: started_at.to_rfc3339(),
                finished_at: finished_at.to_rfc3339(),
            },
            outcome,
            diagnostics,
        }
    }
}

/// Failure modes that abort before a report exists.
pub enum CmdError {
    /// Bad arguments or parameters out of supported range; exit 2.
    Validation(String),
    /// Unreadable, unwritable or corrupt files; exit 4.
    Io(String),
}

impl CmdError {
    pub fn validation(e: impl std::fmt::Display) -> Self {
        CmdError::Validation(e.to_string())
    }
}
