//! Report types, verification suites and batch computations behind the
//! `qdm` command-line tool.

pub mod batch;
pub mod report;
pub mod suites;

pub use report::{CheckRecord, Direction, ReportDocument};
pub use suites::{run_suite, VerifyConfig, SUITE_NAMES};
