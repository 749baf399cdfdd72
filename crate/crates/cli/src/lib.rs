//! Library half of the `hybridqc` tool: code-file I/O and subcommand bodies.

pub mod codefile;
pub mod commands;

pub use codefile::{Code, CodeFile, Params, ParseError};
pub use commands::{Family, Format, LpQuery, Outcome};
