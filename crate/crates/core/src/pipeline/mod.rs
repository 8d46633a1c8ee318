//! Branch-and-bound search over board classes.

mod exhaustive;
mod store;

pub use exhaustive::{exhaustive_search, EXHAUSTIVE_MAX_CELLS};
pub use store::{parse_ranges, RangeSet};

use std::ops::Range;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::classes::{enumerate_classes, BoardClass, BucketSpec, Bucketing, ClassTask};
use crate::error::{Error, Result};
use crate::geometry::{Board, CellOrder, Dims};
use crate::lexicon::Trie;
use crate::scorer::{ScoreTable, Scorer};
use crate::tree::{build_tree, orderly_bound, Arena, BuildOptions, SumId};

pub const DEFAULT_SWITCHOVER_RATIO: f64 = 1.5;
pub const DEFAULT_SWITCHOVER_CELLS: usize = 4;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub dims: Dims,
    pub buckets: BucketSpec,
    pub s_high: u32,
    pub table: ScoreTable,
    /// Switch from branching to the orderly traversal once the bound is at
    /// most `switchover_ratio * s_high`.
    pub switchover_ratio: f64,
    /// ...or once at most this many cells remain unsplit.
    pub switchover_cells: usize,
    pub dedupe: bool,
    /// Task indices to run; `None` runs every class.
    pub tasks: Option<Range<usize>>,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
    /// Directory for results, stats and the checkpoint.
    pub out_dir: Option<PathBuf>,
    /// Fail a class once its arena holds more nodes than this.
    pub node_limit: Option<usize>,
}

impl SearchConfig {
    pub fn new(dims: Dims, buckets: BucketSpec, s_high: u32) -> Self {
        Self {
            dims,
            buckets,
            s_high,
            table: ScoreTable::classic(),
            switchover_ratio: DEFAULT_SWITCHOVER_RATIO,
            switchover_cells: DEFAULT_SWITCHOVER_CELLS,
            dedupe: true,
            tasks: None,
            workers: 0,
            out_dir: None,
            node_limit: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.s_high < 1 {
            return Err(Error::Config("s_high must be at least 1".into()));
        }
        if !(self.switchover_ratio >= 1.0 && self.switchover_ratio.is_finite()) {
            return Err(Error::Config(format!(
                "switchover ratio must be a finite number >= 1, got {}",
                self.switchover_ratio
            )));
        }
        if let Some(r) = &self.tasks {
            if r.start > r.end {
                return Err(Error::Config(format!(
                    "empty task range {}..{}",
                    r.start, r.end
                )));
            }
        }
        Bucketing::new(self.dims, self.buckets)?;
        Ok(())
    }
}

/// A board from a class, with its tree value and its true score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verified {
    pub board: Board,
    /// Tree value: D(B), or M(B) without dedupe.
    pub bound: u64,
    pub score: u32,
    pub words: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Eliminated,
    Candidates,
}

#[derive(Debug, Clone, Default)]
pub struct ClassStats {
    pub root_bound: u32,
    pub nodes_allocated: usize,
    /// Arena nodes are only released when the class finishes, so this
    /// equals `nodes_allocated`.
    pub peak_nodes: usize,
    pub branches: usize,
    pub orderly_calls: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct ClassResult {
    pub task: usize,
    pub class: BoardClass,
    /// Every board the orderly traversal reported, each re-scored.
    pub candidates: Vec<Verified>,
    pub stats: ClassStats,
}

impl ClassResult {
    pub fn outcome(&self) -> Outcome {
        if self.candidates.is_empty() {
            Outcome::Eliminated
        } else {
            Outcome::Candidates
        }
    }

    /// Candidates whose true score reaches `s_high`.
    pub fn winners(&self, s_high: u32) -> impl Iterator<Item = &Verified> {
        self.candidates.iter().filter(move |v| v.score >= s_high)
    }
}

/// Branch-and-bound over one class.
///
/// Builds the tree, then works depth first through a stack of subtrees:
/// anything with a bound below `s_high` is dropped, subtrees that are close
/// enough to `s_high` (or have few cells left) go to [`orderly_bound`], and
/// the rest are split on their highest-ranked unsplit cell.
pub fn process_class(
    task: usize,
    class: &BoardClass,
    cfg: &SearchConfig,
    trie: &Trie,
) -> Result<ClassResult> {
    let started = Instant::now();
    let dims = class.dims();
    let order = CellOrder::new(dims);
    let sequence = order.sequence();
    let s_high = cfg.s_high as u64;
    let mut arena = Arena::new();
    let root = build_tree(
        &mut arena,
        class,
        trie,
        &cfg.table,
        BuildOptions::orderly(&order).dedupe(cfg.dedupe),
    );
    let mut stats = ClassStats {
        root_bound: arena.bound(root),
        ..ClassStats::default()
    };
    let fail = |reason: String| Error::Task {
        task,
        class: class.to_string(),
        reason,
    };

    let mut found = Vec::new();
    let mut stack: Vec<(SumId, BoardClass, usize)> = vec![(root, class.clone(), 0)];
    while let Some((node, sub, depth)) = stack.pop() {
        let bound = arena.bound(node) as u64;
        if bound < s_high {
            continue;
        }
        let remaining = sequence.len() - depth;
        if bound as f64 <= cfg.switchover_ratio * s_high as f64 || remaining <= cfg.switchover_cells
        {
            stats.orderly_calls += 1;
            found.extend(orderly_bound(&arena, node, &sub, sequence, s_high));
            continue;
        }
        let cell = sequence[depth];
        let letters = sub.cell(cell).to_vec();
        let children = arena.branch(node, cell, &letters);
        stats.branches += 1;
        if let Some(limit) = cfg.node_limit {
            if arena.allocated() > limit {
                return Err(fail(format!(
                    "node limit {limit} exceeded ({} allocated)",
                    arena.allocated()
                )));
            }
        }
        for (&letter, &child) in letters.iter().zip(&children).rev() {
            stack.push((child, sub.with_cell(cell, letter), depth + 1));
        }
    }

    let mut scorer = Scorer::new(trie, dims, cfg.table.clone());
    let candidates = found
        .into_iter()
        .map(|c| {
            let s = scorer.score_and_count(&c.board);
            Verified {
                board: c.board,
                bound: c.bound,
                score: s.points,
                words: s.words,
            }
        })
        .collect();
    stats.nodes_allocated = arena.allocated();
    stats.peak_nodes = arena.allocated();
    stats.elapsed = started.elapsed();
    Ok(ClassResult {
        task,
        class: class.clone(),
        candidates,
        stats,
    })
}

/// A board in the final result list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Found {
    /// Canonical orientation.
    pub board: Board,
    pub score: u32,
    pub words: u32,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Distinct canonical boards scoring at least `s_high`, best first.
    pub boards: Vec<Found>,
    /// Tasks selected by the configured range.
    pub tasks_selected: usize,
    /// Tasks run in this invocation (the rest came from the checkpoint).
    pub tasks_run: usize,
    /// Per-class statistics for the tasks run in this invocation.
    pub stats: Vec<(usize, ClassStats)>,
}

/// Runs [`process_class`] over every canonical class in the task range.
///
/// With an output directory, each finished task is recorded before it is
/// marked complete in the checkpoint, so an interrupted run can be resumed
/// with the same configuration and skips work already done.
pub fn search(cfg: &SearchConfig, trie: &Trie) -> Result<SearchReport> {
    cfg.validate()?;
    let bucketing = Bucketing::new(cfg.dims, cfg.buckets)?;
    let range = cfg.tasks.clone().unwrap_or(0..usize::MAX);
    let mut store = match &cfg.out_dir {
        Some(dir) => Some(store::Store::open(dir, cfg.dims)?),
        None => None,
    };
    let done = store
        .as_ref()
        .map(|s| s.completed().clone())
        .unwrap_or_default();

    let mut selected = 0;
    let tasks: Vec<ClassTask> = enumerate_classes(bucketing)
        .skip(range.start)
        .take(range.end - range.start)
        .inspect(|_| selected += 1)
        .filter(|t| !done.contains(t.index))
        .collect();

    let store_lock = Mutex::new(store.as_mut());
    let run = || -> Result<Vec<ClassResult>> {
        tasks
            .par_iter()
            .map(|t| {
                let r = process_class(t.index, &t.class, cfg, trie)?;
                if let Some(s) = store_lock.lock().expect("store lock").as_mut() {
                    s.record(&r, cfg.s_high)?;
                }
                Ok(r)
            })
            .collect()
    };
    let results = if cfg.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?
            .install(run)?
    } else {
        run()?
    };

    let mut boards: Vec<Found> = results
        .iter()
        .flat_map(|r| r.winners(cfg.s_high))
        .map(|v| Found {
            board: v.board.canonicalize(),
            score: v.score,
            words: v.words,
        })
        .collect();
    if let Some(s) = &store {
        boards.extend(s.previous_found(&range)?);
    }
    let boards = finalize(boards);
    if let Some(s) = &mut store {
        s.write_results(&boards)?;
    }
    Ok(SearchReport {
        boards,
        tasks_selected: selected,
        tasks_run: results.len(),
        stats: results.into_iter().map(|r| (r.task, r.stats)).collect(),
    })
}

/// Sorts best first (ties by board text) and drops duplicates.
pub fn finalize(mut boards: Vec<Found>) -> Vec<Found> {
    boards.sort_by(|a, b| {
        b.score
            .cmp(&a.score)
            .then_with(|| a.board.cells().cmp(b.board.cells()))
    });
    boards.dedup_by(|a, b| a.board == b.board);
    boards
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;

    fn trie() -> Trie {
        let words = [
            "tar", "tat", "rat", "art", "eat", "tea", "ate", "sea", "set", "tes", "rate", "tear",
            "seat", "east", "tare", "star", "rest", "aster", "stare", "tears", "teat", "treat",
            "tree", "steer", "reset", "terse", "ease", "sear", "eater", "ates", "eats", "rates",
        ];
        Trie::build(&Lexicon::from_lines(words, 3, "t").unwrap())
    }

    #[test]
    fn config_validation() {
        let dims: Dims = "2x2".parse().unwrap();
        let mut cfg = SearchConfig::new(dims, BucketSpec::uniform(2), 0);
        assert!(cfg.validate().is_err());
        cfg.s_high = 1;
        assert!(cfg.validate().is_ok());
        cfg.switchover_ratio = 0.5;
        assert!(cfg.validate().is_err());
        cfg.switchover_ratio = f64::NAN;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn eliminated_when_threshold_exceeds_bound() {
        let t = trie();
        let dims: Dims = "2x3".parse().unwrap();
        let class = BoardClass::parse("st ae r te as r", dims).unwrap();
        let mut cfg = SearchConfig::new(dims, BucketSpec::uniform(2), 1);
        let r = process_class(0, &class, &cfg, &t).unwrap();
        cfg.s_high = r.stats.root_bound + 1;
        let r = process_class(0, &class, &cfg, &t).unwrap();
        assert_eq!(r.outcome(), Outcome::Eliminated);
    }

    #[test]
    fn node_limit_fails_with_class_identity() {
        let t = trie();
        let dims: Dims = "2x3".parse().unwrap();
        let class = BoardClass::parse("st ae rt te as rs", dims).unwrap();
        let mut cfg = SearchConfig::new(dims, BucketSpec::uniform(2), 1);
        cfg.switchover_ratio = 1.0;
        cfg.switchover_cells = 0;
        cfg.node_limit = Some(1);
        let err = process_class(3, &class, &cfg, &t).unwrap_err();
        assert!(matches!(err, Error::Task { task: 3, .. }));
        assert!(err.to_string().contains("st ae rt et as rs"));
    }

    #[test]
    fn candidates_are_verified_members() {
        let t = trie();
        let dims: Dims = "2x3".parse().unwrap();
        let class = BoardClass::parse("st ae rt te as rs", dims).unwrap();
        let cfg = SearchConfig::new(dims, BucketSpec::uniform(2), 5);
        let r = process_class(0, &class, &cfg, &t).unwrap();
        let mut scorer = Scorer::new(&t, dims, ScoreTable::classic());
        for v in &r.candidates {
            assert!(class.contains(&v.board));
            assert!(v.bound >= 5);
            assert_eq!(v.score, scorer.score(&v.board));
            assert!(v.bound >= v.score as u64);
        }
        let brute: Vec<Board> = class.boards().filter(|b| scorer.score(b) >= 5).collect();
        for b in brute {
            assert!(r.winners(5).any(|v| v.board == b), "missing {b}");
        }
    }
}
