//! Ground-truth scoring: the classic score, Multiboggle (every path counts)
//! and de-duplicated Multiboggle (every word/cell-set pair counts once).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::geometry::{Adjacency, Board, Dims};
use crate::letters::{self, Letter, ALPHABET_SIZE};
use crate::lexicon::{NodeId, Trie, WordMarks};

/// Longest letter length with an explicit table entry; longer words reuse the
/// last entry, except for powers of two which keep doubling (saturating).
const TABLE_LEN: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    Classic,
    WordCount,
    PowersOfTwo,
}

/// Points awarded by word length in letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable {
    kind: TableKind,
    points: [u32; TABLE_LEN],
}

impl ScoreTable {
    pub fn new(kind: TableKind) -> Self {
        let mut points = [0u32; TABLE_LEN];
        for (len, p) in points.iter_mut().enumerate().skip(3) {
            *p = match kind {
                TableKind::Classic => match len {
                    3 | 4 => 1,
                    5 => 2,
                    6 => 3,
                    7 => 5,
                    _ => 11,
                },
                TableKind::WordCount => 1,
                TableKind::PowersOfTwo => 1u32.checked_shl(len as u32 - 3).unwrap_or(u32::MAX),
            };
        }
        Self { kind, points }
    }

    pub fn classic() -> Self {
        Self::new(TableKind::Classic)
    }

    pub fn word_count() -> Self {
        Self::new(TableKind::WordCount)
    }

    pub fn powers_of_two() -> Self {
        Self::new(TableKind::PowersOfTwo)
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    #[inline]
    pub fn points(&self, letter_len: usize) -> u32 {
        if letter_len < TABLE_LEN {
            self.points[letter_len]
        } else if self.kind == TableKind::PowersOfTwo {
            u32::MAX
        } else {
            self.points[TABLE_LEN - 1]
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            TableKind::Classic => "classic",
            TableKind::WordCount => "word_count",
            TableKind::PowersOfTwo => "powers_of_two",
        }
    }
}

impl Default for ScoreTable {
    fn default() -> Self {
        Self::classic()
    }
}

impl FromStr for ScoreTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classic" => Ok(Self::classic()),
            "word_count" | "word-count" => Ok(Self::word_count()),
            "powers_of_two" | "powers-of-two" => Ok(Self::powers_of_two()),
            _ => Err(Error::ScoreTable(s.to_string())),
        }
    }
}

impl fmt::Display for ScoreTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A found word together with one path spelling it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordHit {
    pub word: Vec<Letter>,
    pub path: Vec<usize>,
}

impl WordHit {
    /// The word with "qu" written out.
    pub fn spelled(&self) -> String {
        letters::spell(&self.word)
    }
}

/// Score and unique-word count of a board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoardScore {
    pub points: u32,
    pub words: u32,
}

/// A reusable scorer bound to one trie, board size and score table.
///
/// Holds private visited-word marks, so each worker thread needs its own.
#[derive(Debug, Clone)]
pub struct Scorer<'t> {
    trie: &'t Trie,
    adjacency: Adjacency,
    table: ScoreTable,
    marks: WordMarks,
    dims: Dims,
}

impl<'t> Scorer<'t> {
    pub fn new(trie: &'t Trie, dims: Dims, table: ScoreTable) -> Self {
        Self {
            trie,
            adjacency: Adjacency::new(dims),
            table,
            marks: WordMarks::new(trie),
            dims,
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn table(&self) -> &ScoreTable {
        &self.table
    }

    pub fn trie(&self) -> &'t Trie {
        self.trie
    }

    /// S(B): every findable word counted once.
    pub fn score(&mut self, board: &Board) -> u32 {
        self.score_and_count(board).points
    }

    pub fn score_and_count(&mut self, board: &Board) -> BoardScore {
        debug_assert_eq!(board.dims(), self.dims);
        let mut walk = UniqueWalk {
            trie: self.trie,
            adjacency: &self.adjacency,
            table: &self.table,
            marks: &mut self.marks,
            cells: board.cells(),
            acc: BoardScore::default(),
        };
        let root = walk.trie.root();
        for i in 0..walk.cells.len() {
            walk.step(i, root, 0);
        }
        let acc = walk.acc;
        self.marks.reset();
        acc
    }

    /// Unique words on the board, each with the first path found.
    pub fn find_words(&mut self, board: &Board) -> Vec<WordHit> {
        let mut hits = Vec::new();
        self.visit_paths(board, &mut |_, node, path| hits.push((node, path.to_vec())));
        let mut seen = FxHashSet::default();
        let mut out: Vec<WordHit> = hits
            .into_iter()
            .filter(|(node, _)| seen.insert(*node))
            .map(|(_, path)| WordHit {
                word: path.iter().map(|&c| board.get(c)).collect(),
                path,
            })
            .collect();
        out.sort();
        out
    }

    /// M(B): every distinct path to a word counted.
    pub fn multiboggle(&self, board: &Board) -> u64 {
        let mut total = 0u64;
        let table = &self.table;
        self.visit_paths(board, &mut |trie, node, _| {
            total += table.points(trie.word_length(node)) as u64;
        });
        total
    }

    /// D(B): each (word, unordered cell set) pair counted once.
    pub fn deduped_multiboggle(&self, board: &Board) -> u64 {
        let mut seen: FxHashSet<(NodeId, u64)> = FxHashSet::default();
        let mut total = 0u64;
        let table = &self.table;
        self.visit_paths(board, &mut |trie, node, path| {
            let mask = path.iter().fold(0u64, |m, &c| m | (1 << c));
            if seen.insert((node, mask)) {
                total += table.points(trie.word_length(node)) as u64;
            }
        });
        total
    }

    /// Calls `f` for every path (distinct cells, king moves) spelling a word.
    fn visit_paths(&self, board: &Board, f: &mut dyn FnMut(&Trie, NodeId, &[usize])) {
        let mut path = Vec::with_capacity(self.dims.cells());
        for i in 0..board.cells().len() {
            self.path_step(board.cells(), i, self.trie.root(), &mut path, f);
        }
    }

    fn path_step(
        &self,
        cells: &[Letter],
        idx: usize,
        node: NodeId,
        path: &mut Vec<usize>,
        f: &mut dyn FnMut(&Trie, NodeId, &[usize]),
    ) {
        let Some(n) = self.trie.child(node, cells[idx]) else {
            return;
        };
        path.push(idx);
        if self.trie.is_word(n) {
            f(self.trie, n, path);
        }
        for &next in self.adjacency.of(idx) {
            if !path.contains(&next) {
                self.path_step(cells, next, n, path, f);
            }
        }
        path.pop();
    }
}

// Listing-0 style DFS with word marks; split out of `Scorer` so the marks can
// be borrowed mutably alongside the shared tables.
struct UniqueWalk<'a> {
    trie: &'a Trie,
    adjacency: &'a Adjacency,
    table: &'a ScoreTable,
    marks: &'a mut WordMarks,
    cells: &'a [Letter],
    acc: BoardScore,
}

impl UniqueWalk<'_> {
    fn step(&mut self, idx: usize, node: NodeId, used: u64) {
        if let Some(n) = self.trie.child(node, self.cells[idx]) {
            self.visit(idx, n, used);
        }
    }

    // `n` is the trie node reached by ending a path at `idx`.
    fn visit(&mut self, idx: usize, n: NodeId, used: u64) {
        if let Some(id) = self.trie.word_id(n) {
            if self.marks.mark(id) {
                self.acc.points += self.table.points(self.trie.word_length(n));
                self.acc.words += 1;
            }
        }
        let used = used | (1 << idx);
        let adjacency = self.adjacency;
        for &next in adjacency.of(idx) {
            if used & (1 << next) == 0 {
                if let Some(c) = self.trie.child(n, self.cells[next]) {
                    self.visit(next, c, used);
                }
            }
        }
    }
}

/// Convenience wrapper building a throwaway [`Scorer`].
pub fn score(board: &Board, trie: &Trie, table: &ScoreTable) -> u32 {
    Scorer::new(trie, board.dims(), table.clone()).score(board)
}

pub fn find_words(board: &Board, trie: &Trie) -> Vec<WordHit> {
    Scorer::new(trie, board.dims(), ScoreTable::classic()).find_words(board)
}

pub fn multiboggle(board: &Board, trie: &Trie, table: &ScoreTable) -> u64 {
    Scorer::new(trie, board.dims(), table.clone()).multiboggle(board)
}

pub fn deduped_multiboggle(board: &Board, trie: &Trie, table: &ScoreTable) -> u64 {
    Scorer::new(trie, board.dims(), table.clone()).deduped_multiboggle(board)
}

pub fn random_board(dims: Dims, rng: &mut impl Rng) -> Board {
    let cells = (0..dims.cells())
        .map(|_| rng.gen_range(0..ALPHABET_SIZE as Letter))
        .collect();
    Board::from_cells(dims, cells)
}

/// Result of [`score_rate_benchmark`].
#[derive(Debug, Clone, Copy)]
pub struct RateReport {
    pub boards: usize,
    pub seconds: f64,
    pub boards_per_second: f64,
    pub mean_score: f64,
}

/// Scores `n` seeded random boards and reports throughput and mean score.
pub fn score_rate_benchmark(
    dims: Dims,
    trie: &Trie,
    table: &ScoreTable,
    n: usize,
    seed: u64,
) -> Result<RateReport> {
    if n == 0 {
        return Err(Error::Config("benchmark needs at least one board".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let boards: Vec<Board> = (0..n).map(|_| random_board(dims, &mut rng)).collect();
    let mut scorer = Scorer::new(trie, dims, table.clone());
    let start = Instant::now();
    let total: u64 = boards.iter().map(|b| scorer.score(b) as u64).sum();
    let seconds = start.elapsed().as_secs_f64().max(1e-9);
    Ok(RateReport {
        boards: n,
        seconds,
        boards_per_second: n as f64 / seconds,
        mean_score: total as f64 / n as f64,
    })
}
