//! Command-line front end for the three-player game engine.
//!
//! The binary is a thin shell: argument parsing lives in `main.rs`,
//! each subcommand body in [`commands`], and everything funnels into a
//! [`Report`] — exit code, text payload, JSON payload — so the text and
//! JSON routes can never drift apart.

pub mod commands;
pub mod equation;
pub mod format;
pub mod parallel;
pub mod verify;

use serde_json::Value;

/// What a subcommand hands back to `main`.
///
/// Exit codes: 0 when the command succeeded and any claim it checked
/// held; 1 when a scan found a violation, a search came up empty, or
/// two games were distinguished; 2 for usage and parse errors.
pub struct Report {
    pub exit: u8,
    pub text: String,
    pub result: Value,
}

impl Report {
    /// Success: the command ran and its claim (if any) held.
    pub fn ok(text: impl Into<String>, result: Value) -> Report {
        Report {
            exit: 0,
            text: text.into(),
            result,
        }
    }

    /// The command ran fine but the answer is negative: a violation, a
    /// distinguishing context, or an empty search.
    pub fn finding(text: impl Into<String>, result: Value) -> Report {
        Report {
            exit: 1,
            text: text.into(),
            result,
        }
    }

    /// The input never made it to the engine.
    pub fn usage(text: impl Into<String>, result: Value) -> Report {
        Report {
            exit: 2,
            text: text.into(),
            result,
        }
    }
}
