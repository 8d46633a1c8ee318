//! Pool-based hillclimbing over boards.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::geometry::{Board, Dims, SymmetryGroup};
use crate::letters::{Letter, ALPHABET_SIZE};
use crate::lexicon::Trie;
use crate::scorer::{random_board, ScoreTable, Scorer};

/// Every board one edit away from `board`: a single cell changed to another
/// symbol, or two cells holding different symbols swapped.
pub fn edit_neighbors(board: &Board) -> Vec<Board> {
    let cells = board.cells();
    let n = cells.len();
    let mut out = Vec::with_capacity(n * (ALPHABET_SIZE - 1) + n * (n - 1) / 2);
    for (i, &c) in cells.iter().enumerate() {
        for l in 0..ALPHABET_SIZE as Letter {
            if l != c {
                let mut b = board.clone();
                b.cells_mut()[i] = l;
                out.push(b);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if cells[i] != cells[j] {
                let mut b = board.clone();
                b.cells_mut().swap(i, j);
                out.push(b);
            }
        }
    }
    // A change and a swap never coincide (a swap alters two cells), and no two
    // distinct swaps produce the same board, so `out` has no duplicates.
    out
}

/// The top boards found so far, best first, one per symmetry orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pool {
    capacity: usize,
    members: Vec<(Board, u32)>,
    iterations: usize,
}

impl Pool {
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Members as (canonical board, score), ordered by score descending and
    /// then by board text.
    pub fn members(&self) -> &[(Board, u32)] {
        &self.members
    }

    pub fn best(&self) -> Option<&(Board, u32)> {
        self.members.first()
    }

    /// Expansion rounds run before the pool stopped changing.
    pub fn iterations(&self) -> usize {
        self.iterations
    }
}

fn rank(a: &(Board, u32), b: &(Board, u32)) -> std::cmp::Ordering {
    b.1.cmp(&a.1).then_with(|| a.0.cells().cmp(b.0.cells()))
}

/// Runs the hillclimb from `mu` random boards drawn from `seed`.
pub fn hillclimb(dims: Dims, mu: usize, seed: u64, trie: &Trie, table: &ScoreTable) -> Pool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = (0..mu).map(|_| random_board(dims, &mut rng)).collect();
    hillclimb_from(start, mu, trie, table)
}

/// Runs the hillclimb from the given starting boards.
///
/// Each round replaces the pool with the best `mu` boards among the pool and
/// all neighbors of its members. Neighbors of a board that survived the
/// previous round were already considered, and the cutoff score never falls,
/// so only members new in the last round are expanded.
pub fn hillclimb_from(start: Vec<Board>, mu: usize, trie: &Trie, table: &ScoreTable) -> Pool {
    assert!(mu >= 1, "pool size must be at least 1");
    let Some(dims) = start.first().map(Board::dims) else {
        return Pool {
            capacity: mu,
            members: Vec::new(),
            iterations: 0,
        };
    };
    let group = SymmetryGroup::new(dims);
    let canon = |b: &Board| Board::from_cells(dims, group.canonical(b.cells()));

    let mut seen: FxHashSet<Board> = FxHashSet::default();
    let start: Vec<Board> = start
        .iter()
        .map(canon)
        .filter(|b| seen.insert(b.clone()))
        .collect();
    let mut members = score_all(start, trie, table, dims);
    members.sort_by(rank);
    members.truncate(mu);
    let mut fresh: Vec<Board> = members.iter().map(|(b, _)| b.clone()).collect();

    let mut iterations = 0;
    loop {
        iterations += 1;
        let in_pool: FxHashSet<&Board> = members.iter().map(|(b, _)| b).collect();
        let mut candidates: Vec<Board> = fresh
            .par_iter()
            .flat_map_iter(|b| edit_neighbors(b).into_iter().map(|n| canon(&n)))
            .collect();
        candidates.par_sort_unstable();
        candidates.dedup();
        candidates.retain(|b| !in_pool.contains(b));
        drop(in_pool);

        let mut next = members.clone();
        next.extend(score_all(candidates, trie, table, dims));
        next.sort_by(rank);
        next.truncate(mu);

        let old: FxHashSet<&Board> = members.iter().map(|(b, _)| b).collect();
        fresh = next
            .iter()
            .filter(|(b, _)| !old.contains(b))
            .map(|(b, _)| b.clone())
            .collect();
        drop(old);
        members = next;
        if fresh.is_empty() {
            break;
        }
    }
    Pool {
        capacity: mu,
        members,
        iterations,
    }
}

fn score_all(boards: Vec<Board>, trie: &Trie, table: &ScoreTable, dims: Dims) -> Vec<(Board, u32)> {
    boards
        .into_par_iter()
        .map_init(
            || Scorer::new(trie, dims, table.clone()),
            |scorer, b| {
                let s = scorer.score(&b);
                (b, s)
            },
        )
        .collect()
}
