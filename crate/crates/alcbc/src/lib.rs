//! Command line, file formats and test corpus for `alcbc-core`.

pub mod cli;
pub mod corpus;
pub mod formats;

pub use cli::run;
