//! Shared fixtures for the criterion benchmarks.

use std::path::PathBuf;

use boggle_core::{BoardClass, Dims, Lexicon, Trie};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// ENABLE2K when present, else ENABLE1.
pub fn word_list() -> Trie {
    let dir = data_dir();
    let path = ["enable2k.txt", "enable1.txt"]
        .iter()
        .map(|f| dir.join(f))
        .find(|p| p.exists())
        .expect("no word list in data/");
    Trie::build(&Lexicon::load(path, 3).expect("load word list"))
}

/// A high-scoring 3x3 class with 5,062,500 boards.
pub fn class_3x3() -> BoardClass {
    BoardClass::parse(
        "lnrsy chkmpt lnrsy aeiou aeiou aeiou chkmpt lnrsy bdfgjvwxz",
        Dims::new(3, 3).unwrap(),
    )
    .unwrap()
}

/// A smaller 3x3 class for the orderly traversal.
pub fn small_class_3x3() -> BoardClass {
    BoardClass::parse("lnr ae st ae lnr io dt ae s", Dims::new(3, 3).unwrap()).unwrap()
}
