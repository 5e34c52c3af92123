//! File formats and the parse → preprocess → graph → rank → evaluate pipeline
//! behind the `wordrank` binary.

pub mod formats;
pub mod pipeline;

pub use pipeline::{CliError, RunConfig};
