//! Batch front-end for `nashorder`: problem files, analysis runs, reports
//! and the bundled example corpus.

pub mod corpus;
pub mod problem;
pub mod report;
pub mod runner;

pub use corpus::{run_corpus, CorpusSummary, BUNDLED};
pub use problem::{Analysis, InputError, Options, Problem};
pub use report::{Report, Status};
pub use runner::{run, RunConfig};
