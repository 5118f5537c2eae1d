//! Command line and JSON/HTTP front end for the `trivalent` library.
//!
//! [`run`] executes one command line and returns its exit code and output,
//! which keeps every subcommand testable without spawning a process.
//! [`server`] holds the HTTP facade used by interactive clients.

mod commands;
pub mod server;

pub use commands::{run, run_with_io, Cli, Output, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
