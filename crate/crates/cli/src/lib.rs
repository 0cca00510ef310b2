//! Verification suites and file formats behind the `chow` command.

pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod latex;
pub mod report;
pub mod session;
pub mod suites;

pub use config::RunConfig;
pub use error::CliError;
pub use report::{Check, SuiteReport};
pub use session::Session;
