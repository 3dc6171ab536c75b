//! JSON schemas, character input, jobs and reports.

pub mod charexpr;
pub mod job;
pub mod json;
pub mod report;

pub use job::{run, JobSpec, RepSource};
pub use json::{SchemaError, SCHEMA};
pub use report::{Command, Output, Report, Status};
