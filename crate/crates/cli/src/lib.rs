//! Library side of the command-line tool.
//!
//! Each subcommand builds a serializable report; `main` only parses
//! arguments, dispatches, renders, and maps errors to exit codes. Keeping
//! the logic here lets the integration and acceptance suites drive the same
//! code paths the binary does.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

use fano_strata_core::Error;

/// Exit codes: 0 success / all checks pass, 1 verification failure,
/// 2 usage or parse error, 3 resource cap exceeded.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 3,
        _ => 2,
    }
}
