//! Suite runner behind the `qtangent` binary.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{BoxSpec, ConfigError, Format, Suite, SuiteConfig};
pub use report::{emit_report, CheckResult, Report, Status, Summary};
pub use suites::run_suite;

/// Validates the configuration and runs it.
pub fn run(config: SuiteConfig) -> Result<Report, ConfigError> {
    config.validate()?;
    let results = run_suite(&config);
    Ok(Report::new(config, results))
}
