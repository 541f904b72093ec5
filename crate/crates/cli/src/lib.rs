//! Net files, JSON reports and the `pnasync` command line.

pub mod app;
pub mod format;
pub mod parallel;
pub mod report;

pub use format::{parse, serialize, FormatError, NetDocument};
