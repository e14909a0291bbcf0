//! Library side of the `filtdef` command: job specs, dispatch and reports.

pub mod job;
pub mod report;
pub mod run;

pub use job::{Command, Format, JobSpec, Range};
pub use report::Report;
pub use run::{exit_code, run, Outcome};
