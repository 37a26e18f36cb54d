//! Job parsing, dispatch and report rendering for the `morphic` command.

pub mod job;
pub mod report;
pub mod run;

pub use job::{parse_input, Command, Format, JobSpec, Options};
pub use run::{run, Outcome, Status};
