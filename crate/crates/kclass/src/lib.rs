//! Command-line front end for `kclass-core`: spec parsing, JSON and text
//! reports, and a parallel class-count scan.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod scan;

pub use commands::{cmd_compare, cmd_fullness, cmd_invariant, cmd_scan, Mode};
pub use error::CliError;
pub use input::SpecInput;
pub use report::Report;
