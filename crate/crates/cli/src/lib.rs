//! The `hedonic` command line: solve, verify, enumerate, generate and run
//! dynamics on game files.

mod app;
pub mod format;

pub use app::{
    run, Cli, OutputFormat, EXIT_BUDGET, EXIT_OK, EXIT_PRECONDITION, EXIT_UNSTABLE, EXIT_USAGE,
};
