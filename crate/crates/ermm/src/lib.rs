//! Command line, parallel Monte Carlo drivers and report formats built on `ermm-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod sim;
