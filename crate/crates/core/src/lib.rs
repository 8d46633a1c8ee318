//! Exhaustive search for the highest-scoring Boggle boards.
//!
//! The pieces, bottom up: a word [`lexicon`] stored as a trie, board
//! [`geometry`] and symmetry, the [`scorer`], a [`hillclimb`] search for good
//! boards, [`classes`] of boards, the Sum/Choice [`tree`] bound, and the
//! branch-and-bound [`pipeline`] that ties them together.

pub mod classes;
pub mod error;
pub mod geometry;
pub mod hillclimb;
pub mod letters;
pub mod lexicon;
pub mod pipeline;
pub mod scorer;
pub mod tree;

pub use classes::{BoardClass, BucketSpec, Bucketing, ClassTask, LetterBuckets};
pub use error::{Error, Result};
pub use geometry::{Adjacency, Board, CellOrder, Dims, SymmetryGroup};
pub use hillclimb::{hillclimb, Pool};
pub use letters::Letter;
pub use lexicon::{Lexicon, Trie};
pub use pipeline::{search, ClassResult, SearchConfig};
pub use scorer::{ScoreTable, Scorer};
pub use tree::{Arena, Candidate, SumId};
