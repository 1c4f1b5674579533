//! JSON/TSV formats and the `looproot` command-line front end.

pub mod cli;
pub mod error;
pub mod formats;

pub use looproot_core as core;
