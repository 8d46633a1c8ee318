use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read word list {path}: {source}")]
    WordList {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("empty lexicon: no usable words in {0}")]
    EmptyLexicon(String),

    #[error("invalid dimensions {0:?}: expected MxN with M, N >= 2")]
    Dims(String),

    #[error("invalid board {text:?} at position {position}: {reason}")]
    Board {
        text: String,
        position: usize,
        reason: String,
    },

    #[error("invalid board class {text:?}: {reason}")]
    Class { text: String, reason: String },

    #[error("unsupported bucket count {0}; expected 1, 2, 3 or 4")]
    Buckets(usize),

    #[error("invalid bucket spec {0:?}: expected N or C:O (corner buckets : other buckets)")]
    BucketSpec(String),

    #[error("cell {cell} has a single letter and cannot be split")]
    SplitSingleton { cell: usize },

    #[error("unknown score table {0:?}; expected classic, word_count or powers_of_two")]
    ScoreTable(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(
        "exhaustive search over {dims} is infeasible ({boards} boards); limited to at most 6 cells"
    )]
    Infeasible { dims: String, boards: String },

    #[error("task {task} ({class}) failed: {reason}")]
    Task {
        task: usize,
        class: String,
        reason: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
