//! File formats, reports, fixtures and the command-line front end for
//! `ontolab-core`.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod parallel;
pub mod report;

pub use crate::error::{FormatError, Violation, Violations};
