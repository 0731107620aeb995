//! Library surface of the command-line tool: argument definitions, CSV
//! ingestion, and the command runners. The binary in `main.rs` is a thin
//! shell over [`runner::execute`].

pub mod args;
pub mod csvio;
pub mod runner;

pub use args::{Cli, Command};
pub use csvio::{parse_interval_csv, CsvError};
pub use runner::{execute, run_command, CliError, RunOutput};

/// Configure the global worker pool from `ORCDF_THREADS`, when set.
pub fn configure_threads() {
    if let Ok(text) = std::env::var("ORCDF_THREADS") {
        if let Ok(n) = text.trim().parse::<usize>() {
            if n >= 1 {
                // Ignore failure: the pool may already be initialized.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}
