//! Input files, the analysis pipeline and report output.

pub mod app;
pub mod fixtures;
pub mod gb;
pub mod render;
pub mod report;
pub mod spec;

pub use app::{load_spec, outcome, run_cli, Outcome, EXIT_ERROR, EXIT_OK, EXIT_VIOLATED};
pub use report::{run, AnalysisReport, Command, RunOptions};
