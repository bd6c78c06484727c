//! Scan driver behind the `noon` binary: request parsing, the scans themselves and
//! CSV/JSON output.

pub mod error;
pub mod output;
pub mod request;
pub mod scan;

pub use error::CliError;
pub use output::{emit, Column, Format, Metadata, ScanResult};
pub use request::{Args, Command, ConfigFile, ScanRequest, SchemeArg};
pub use scan::run;
