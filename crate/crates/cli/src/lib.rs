//! Command-line front end for `klein168`: subcommands for the individual
//! computations and a report runner that replays the full verification
//! ledger.

pub mod checks;
pub mod commands;
pub mod config;
pub mod context;
pub mod report;
