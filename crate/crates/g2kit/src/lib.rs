//! IO, JSON schemas and subcommand logic behind the `g2kit` binary.

pub mod commands;
pub mod json;

/// Version tag carried by every JSON report.
pub const SCHEMA_VERSION: u32 = 1;
