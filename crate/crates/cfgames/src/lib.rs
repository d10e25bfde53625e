//! Standard-library companion to `cfgames-core`: file formats, strategy
//! specifiers, subprocess strategies, verification suites, and the `cfgames`
//! command-line interface. Everything here is plumbing; the machines, codings,
//! and game engines live in the core crate.

pub mod dot;
pub mod format;
pub mod scripted;
pub mod strat;
pub mod suites;
pub mod winset;

/// Entry point for the `cfgames` binary; returns the process exit code.
pub fn run() -> i32 {
    2
}
