//! Argument parsing, subcommands and report rendering for the `churn`
//! binary.

pub mod args;
pub mod commands;
pub mod render;

pub use args::Cli;
