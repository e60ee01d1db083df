//! `tmfwb`: regenerates the tables and charts as JSON/CSV and runs the
//! certification suite. `run` is the whole program; `main` only forwards argv.

pub mod certify;
pub mod commands;
pub mod meta;

pub use commands::run;
