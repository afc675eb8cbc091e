//! Plumbing behind the command line: file I/O, sweeps and claim checks.

pub mod claims;
pub mod io;
pub mod sweep;

pub use claims::{verify_claims, ClaimCheck};
pub use io::{load_instance, load_schedule, load_solution, save_instance, save_solution};
pub use sweep::{run_sweep, write_csv, SweepRow, SweepSpec};

/// Environment variable overriding [`default_workers`].
pub const THREADS_ENV: &str = "FAIRCONF_THREADS";

/// Worker count from `FAIRCONF_THREADS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |k| k.get()))
}
