//! Harness library behind the `tricolor` binary: file helpers, report
//! shaping, and the experiment-plan runner.

pub mod bench;
pub mod io;
pub mod report;

pub use bench::{run_plan, BenchOutcome, FamilySpec, Plan};
