//! Library surface of the `cohbound` binary: the matrix file format and the
//! command implementations, exposed so integration tests can exercise them
//! directly.

pub mod commands;
pub mod format;

pub use format::CliError;
