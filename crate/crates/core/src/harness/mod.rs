//! Configuration, verification suites, reports and experiment directories.

pub mod checks;
mod config;
mod report;
mod suites;

pub use config::{parse_config, ConfigError, ExperimentConfig};
pub use report::{read_report, write_report, Bound, ReportRow, REPORT_HEADER};
pub use suites::{
    collect_reports, critical_grid, run_suite, simulate, write_summary, Suite, SuiteReport,
};
