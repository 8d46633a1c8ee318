use rayon::prelude::*;

use super::{finalize, Found};
use crate::error::{Error, Result};
use crate::geometry::{Board, Dims, SymmetryGroup};
use crate::letters::{Letter, ALPHABET_SIZE};
use crate::lexicon::Trie;
use crate::scorer::{ScoreTable, Scorer};

/// Largest board (in cells) [`exhaustive_search`] accepts: 26^6 is about
/// 3.1e8 boards.
pub const EXHAUSTIVE_MAX_CELLS: usize = 6;

/// Scores every canonical board and returns those reaching `s_high`, best
/// first.
pub fn exhaustive_search(
    dims: Dims,
    trie: &Trie,
    table: &ScoreTable,
    s_high: u32,
) -> Result<Vec<Found>> {
    let n = dims.cells();
    if n > EXHAUSTIVE_MAX_CELLS {
        return Err(Error::Infeasible {
            dims: dims.to_string(),
            boards: format!("26^{n} = {:.2e}", (ALPHABET_SIZE as f64).powi(n as i32)),
        });
    }
    let group = SymmetryGroup::new(dims);
    let found: Vec<Found> = (0..ALPHABET_SIZE as Letter)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut scorer = Scorer::new(trie, dims, table.clone());
            let mut cells = vec![0 as Letter; n];
            cells[0] = first;
            let mut out = Vec::new();
            loop {
                if group.is_canonical(&cells) {
                    let board = Board::from_cells(dims, cells.clone());
                    let s = scorer.score_and_count(&board);
                    if s.points >= s_high {
                        out.push(Found {
                            board,
                            score: s.points,
                            words: s.words,
                        });
                    }
                }
                if !advance(&mut cells[1..]) {
                    break;
                }
            }
            out
        })
        .collect();
    Ok(finalize(found))
}

fn advance(digits: &mut [Letter]) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if (*d as usize) < ALPHABET_SIZE {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;

    #[test]
    fn refuses_large_boards() {
        let t = Trie::build(&Lexicon::from_lines(["tea"], 3, "t").unwrap());
        let err = exhaustive_search("3x3".parse().unwrap(), &t, &ScoreTable::classic(), 1);
        assert!(matches!(err, Err(Error::Infeasible { .. })));
    }

    #[test]
    fn tiny_lexicon_2x2() {
        let t = Trie::build(&Lexicon::from_lines(["tea", "eat", "quit"], 3, "t").unwrap());
        let table = ScoreTable::classic();
        let all = exhaustive_search("2x2".parse().unwrap(), &t, &table, 1).unwrap();
        assert!(!all.is_empty());
        assert!(all.iter().all(|f| f.board.is_canonical() && f.score >= 1));
        assert!(all.windows(2).all(|w| w[0].score >= w[1].score));
        // "quit" is 4 letters on 3 cells.
        assert!(all
            .iter()
            .any(|f| f.board.to_string().contains('q') && f.score >= 1));
        let top = all[0].score;
        assert!(
            exhaustive_search("2x2".parse().unwrap(), &t, &table, top + 1)
                .unwrap()
                .is_empty()
        );
    }
}
