//! Command-line surface for `nuobdd`: program and report files, and the
//! subcommands that build, run, verify, compose and certify programs.

pub mod commands;
pub mod format;
pub mod report;
