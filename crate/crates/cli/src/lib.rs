//! Text front end for the finite-ring toolkit: a line-oriented specification
//! language, an evaluator that builds the declared objects, a job runner and
//! report rendering.

pub mod build;
pub mod dsl;
pub mod report;
pub mod run;

pub use dsl::{parse, serialize, Diagnostic, SpecFile};
pub use run::{Options, Record};

/// Exit status: every check passed or was skipped.
pub const EXIT_OK: i32 = 0;
/// Exit status: at least one check failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status: the input could not be read or parsed.
pub const EXIT_INPUT: i32 = 2;

pub fn exit_code(records: &[Record]) -> i32 {
    if records.iter().any(|r| r.result.status == amalgam_core::checks::Status::Fail) {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}
