//! File formats, thread-parallel evaluation and the `ca` command line for
//! [`ca_core`].

pub mod catalog;
pub mod cli;
mod error;
pub mod parallel;
pub mod pattern;
pub mod ppm;
pub mod rulespec;

pub use error::{Result, ToolError};
