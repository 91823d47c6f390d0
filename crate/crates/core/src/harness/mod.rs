//! Verification harness: configuration, suites, reports, expression parsing.

pub mod config;
pub mod expr;
pub mod report;
pub mod suites;

pub use config::{RawConfig, Suite, SuiteConfig};
pub use expr::{parse_expression, Value};
pub use report::{Record, Report};
pub use suites::run_suite;
