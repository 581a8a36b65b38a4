//! Command-line layer over `trivext`: the ring-expression grammar, the JSON
//! report document and the `trivext` binary's subcommands.

pub mod app;
pub mod expr;
pub mod report;

pub use app::{run, Outcome};
pub use report::ReportDocument;
