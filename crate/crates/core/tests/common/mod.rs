#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use boggle_core::tree::{build_tree, orderly_bound, Arena, BuildOptions, SumId};
use boggle_core::{Board, BoardClass, CellOrder, Dims, Lexicon, ScoreTable, Scorer, Trie};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn enable1_words() -> Vec<String> {
    let path = data_dir().join("enable1.txt");
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
        .lines()
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty())
        .collect()
}

pub fn enable1() -> Trie {
    Trie::build(&Lexicon::load(data_dir().join("enable1.txt"), 3).unwrap())
}

/// A fixed random sample of short ENABLE1 words.
pub fn sub_lexicon(size: usize, seed: u64) -> Lexicon {
    let mut words: Vec<String> = enable1_words()
        .into_iter()
        .filter(|w| (3..=6).contains(&w.len()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    words.shuffle(&mut rng);
    words.truncate(size);
    Lexicon::from_lines(words, 3, "enable1-sample").unwrap()
}

pub fn sub_trie() -> Trie {
    Trie::build(&sub_lexicon(2000, 2024))
}

const CLASS_POOL: &[u8] = b"aeioustrlndpcmbhgqy";

/// A class with 1 to 3 letters per cell, drawn from common letters.
pub fn random_class(dims: Dims, rng: &mut impl Rng) -> BoardClass {
    let cells = (0..dims.cells())
        .map(|_| {
            let k = rng.gen_range(1..=3);
            CLASS_POOL
                .choose_multiple(rng, k)
                .map(|&c| c - b'a')
                .collect()
        })
        .collect();
    BoardClass::new(dims, cells).unwrap()
}

pub fn board_of_singletons(class: &BoardClass) -> Board {
    Board::from_cells(class.dims(), class.cells().iter().map(|c| c[0]).collect())
}

fn branch_to_singletons(
    arena: &mut Arena,
    node: SumId,
    class: &BoardClass,
    sequence: &[usize],
    depth: usize,
    s_high: u64,
    out: &mut BTreeMap<Board, u64>,
) {
    let bound = arena.bound(node) as u64;
    if bound < s_high {
        return;
    }
    if depth == sequence.len() {
        out.insert(board_of_singletons(class), bound);
        return;
    }
    let cell = sequence[depth];
    let letters = class.cell(cell).to_vec();
    let children = arena.branch(node, cell, &letters);
    for (&letter, child) in letters.iter().zip(children) {
        let sub = class.with_cell(cell, letter);
        branch_to_singletons(arena, child, &sub, sequence, depth + 1, s_high, out);
    }
}

/// Checks every tree identity against the scorer on each board of `class`.
/// Returns the number of boards checked.
pub fn oracle_check(trie: &Trie, table: &ScoreTable, class: &BoardClass) -> Result<usize, String> {
    let dims = class.dims();
    let order = CellOrder::new(dims);
    let sequence = order.sequence();
    let mut scorer = Scorer::new(trie, dims, table.clone());
    let boards: Vec<Board> = class.boards().collect();
    let s: Vec<u64> = boards.iter().map(|b| scorer.score(b) as u64).collect();
    let m: Vec<u64> = boards.iter().map(|b| scorer.multiboggle(b)).collect();
    let d: Vec<u64> = boards
        .iter()
        .map(|b| scorer.deduped_multiboggle(b))
        .collect();
    let max_s = s.iter().copied().max().unwrap_or(0);

    for dedupe in [true, false] {
        let mut arena = Arena::new();
        let root = build_tree(
            &mut arena,
            class,
            trie,
            table,
            BuildOptions::orderly(&order).dedupe(dedupe),
        );
        let expected = if dedupe { &d } else { &m };
        for (b, &e) in boards.iter().zip(expected) {
            let f = arena.force(root, b);
            if f != e {
                return Err(format!(
                    "{class}: F={f} but expected {e} at {b} (dedupe={dedupe})"
                ));
            }
        }
        let u = arena.bound(root) as u64;
        if u < max_s {
            return Err(format!(
                "{class}: U={u} below max S={max_s} (dedupe={dedupe})"
            ));
        }
        if !dedupe {
            continue;
        }

        let all = orderly_bound(&arena, root, class, sequence, 0);
        let got: BTreeMap<Board, u64> = all.into_iter().map(|c| (c.board, c.bound)).collect();
        let want: BTreeMap<Board, u64> = boards.iter().cloned().zip(d.iter().copied()).collect();
        if got != want {
            return Err(format!("{class}: orderly_bound at 0 differs from D"));
        }

        let s_high = (d.iter().copied().max().unwrap_or(0) / 2).max(1);
        let fast: BTreeMap<Board, u64> = orderly_bound(&arena, root, class, sequence, s_high)
            .into_iter()
            .map(|c| (c.board, c.bound))
            .collect();
        let mut branched = BTreeMap::new();
        branch_to_singletons(&mut arena, root, class, sequence, 0, s_high, &mut branched);
        if fast != branched {
            return Err(format!(
                "{class}: branching to singletons kept {} boards, orderly_bound {} (S_high={s_high})",
                branched.len(),
                fast.len()
            ));
        }
    }
    Ok(boards.len())
}

/// Runs [`oracle_check`] on `n` random classes, alternating 2x2 and 2x3.
pub fn oracle_suite(trie: &Trie, n: usize, seed: u64) -> Result<(usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = ScoreTable::classic();
    let shapes: [Dims; 2] = ["2x2".parse().unwrap(), "2x3".parse().unwrap()];
    let mut boards = 0;
    for i in 0..n {
        let class = random_class(shapes[i % 2], &mut rng);
        boards += oracle_check(trie, &table, &class)?;
    }
    Ok((n, boards))
}
