use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Decode { offset: usize },

    #[error("corpus contains no sentences")]
    EmptyCorpus,

    #[error("cannot build a word graph from an empty document")]
    EmptyDocument,

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("graph contains a directed cycle")]
    Cycle,

    #[error("invalid word graph: {0}")]
    InvalidGraph(String),

    #[error("merging vertices {0} and {1} would create a cycle")]
    MergeCycle(usize, usize),

    #[error("count exceeds the configured cap")]
    CountOverflow,

    #[error("score vectors cover different vertex sets ({0} vs {1})")]
    MismatchedScores(usize, usize),

    #[error("unknown algorithm `{0}` (expected one of: minmax, refscore, hits-r1, hits-r2, hits-r3, hits-r4, ppf, pagerank)")]
    UnknownAlgorithm(String),

    #[error("gold set is empty")]
    EmptyGold,

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
