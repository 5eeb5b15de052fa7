//! Reproduction harness: worked tables, exhaustive verification, norm sweeps
//! and plots.

pub mod format;
pub mod plot;
pub mod sweep;
pub mod tables;
pub mod verify;

pub use plot::{parse_columns, parse_sweep_csv, render_plot, render_svg, SweepTable};
pub use sweep::{run_sweep, write_csv, SweepConfig, SweepOutcome, SweepRecord};
pub use tables::{dump_tables, TablesReport};
pub use verify::{verify_suite, VerifyReport};
