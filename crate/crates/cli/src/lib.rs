//! Ideal files, reports, randomized suites and the `regstab` commands.

pub mod commands;
pub mod parse;
pub mod report;
pub mod suite;
