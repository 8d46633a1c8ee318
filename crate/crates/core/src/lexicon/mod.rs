//! Word lists and the trie every search prunes against.

mod trie;

pub use trie::{NodeId, Trie, WordMarks};

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::letters::{self, Letter};

pub const DEFAULT_MIN_LEN: usize = 3;

/// A normalized, sorted, de-duplicated word list.
///
/// Words are stored in symbol form: lowercase `a..z`, with each "qu" collapsed
/// to the single Qu symbol `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    words: Vec<String>,
    source_name: String,
    raw_entries: usize,
}

impl Lexicon {
    /// Reads a one-word-per-line file (LF or CRLF, any case).
    pub fn load(path: impl AsRef<Path>, min_len: usize) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::WordList {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().to_uppercase())
            .unwrap_or_default();
        Self::from_lines(text.lines(), min_len, name)
    }

    pub fn from_lines<I, S>(
        lines: I,
        min_len: usize,
        source_name: impl Into<String>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let source_name = source_name.into();
        let mut raw_entries = 0;
        let mut words = BTreeSet::new();
        for line in lines {
            let line = line.as_ref().trim();
            if line.is_empty() {
                continue;
            }
            raw_entries += 1;
            if let Some(word) = normalize(line, min_len) {
                words.insert(word);
            }
        }
        if words.is_empty() {
            return Err(Error::EmptyLexicon(source_name));
        }
        Ok(Self {
            words: words.into_iter().collect(),
            source_name,
            raw_entries,
        })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    /// Non-blank lines read before filtering.
    pub fn raw_entries(&self) -> usize {
        self.raw_entries
    }

    /// Words as symbol sequences.
    pub fn symbol_words(&self) -> impl Iterator<Item = Vec<Letter>> + '_ {
        self.words
            .iter()
            .map(|w| w.bytes().map(|b| b - b'a').collect())
    }
}

/// Lowercases, filters and q-encodes a single entry.
fn normalize(raw: &str, min_len: usize) -> Option<String> {
    let lower = raw.to_ascii_lowercase();
    if !lower.bytes().all(|b| b.is_ascii_lowercase()) {
        return None;
    }
    if lower.len() < min_len {
        return None;
    }
    let bytes = lower.as_bytes();
    let mut out = String::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        out.push(b as char);
        if b == b'q' {
            // A Qu cell cannot spell a bare q.
            if bytes.get(i + 1) != Some(&b'u') {
                return None;
            }
            i += 1;
        }
        i += 1;
    }
    Some(out)
}

/// Letter length of a symbol word ('q' counts twice).
pub fn letter_length(symbols: &[Letter]) -> usize {
    symbols.iter().map(|&l| letters::letter_len(l)).sum()
}
