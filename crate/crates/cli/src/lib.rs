// Validation guards use `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Frozen oracle constants keep full published digits.
#![allow(clippy::excessive_precision)]

//! Harness for the inequality laboratory: single verifications, identity
//! checks, hypothesis classification, and configuration-driven parameter
//! sweeps with CSV/JSON reporting.

pub mod config;
pub mod report;
pub mod sweep;
pub mod verify;

pub use config::{load_config, ConfigError, OutputFormat, SweepConfig};
pub use report::{render_csv, render_json, write_report, ReportError};
pub use sweep::{contradiction_rows, run_sweep, ReportRow, MARGIN_SLACK};
pub use verify::{verify_theorem, HypothesisFlags, VerifyError};
