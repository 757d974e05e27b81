//! JSON formats, configuration and subcommands of the `ccurve` tool.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod io;

pub use commands::run;
