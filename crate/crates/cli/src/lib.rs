//! Front end for `koszul-core`: the algebra file format, command dispatch and reports.

pub mod commands;
pub mod report;
pub mod spec_file;

pub use commands::{run_command, AlgebraSource, CliError, CommandKind, Engine, RunConfig};
pub use report::{Check, OutputFormat, Report};
pub use spec_file::{AlgebraSpecFile, LoadError, ParseError, ParseErrorKind};
