//! Library side of the `freiman` binary: commands and their reports.

pub mod commands;
pub mod report;
