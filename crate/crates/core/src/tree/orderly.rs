use super::{Arena, ChoiceId, SumId};
use crate::classes::BoardClass;
use crate::geometry::Board;
use crate::letters::Letter;

/// A complete board that survived the orderly traversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate {
    pub board: Board,
    /// Tree value at `board`, i.e. D(B) for a deduplicated orderly tree.
    pub bound: u64,
}

/// Enumerates every board of `class` whose tree value is at least `s_high`,
/// forcing cells in the order given by `sequence` (highest rank first).
///
/// Keeps one stack of pending choice nodes per cell together with the sum of
/// their bounds, so moving to the next cell only touches that cell's stack.
pub fn orderly_bound(
    arena: &Arena,
    root: SumId,
    class: &BoardClass,
    sequence: &[usize],
    s_high: u64,
) -> Vec<Candidate> {
    let n = class.dims().cells();
    assert_eq!(sequence.len(), n, "sequence must cover every cell");
    let mut walk = Walk {
        arena,
        class,
        sequence,
        s_high,
        stacks: vec![Vec::new(); n],
        stack_bound: vec![0; n],
        outstanding: 0,
        log: Vec::new(),
        cells: vec![0; n],
        out: Vec::new(),
    };
    let node = arena.sum(root);
    for &c in node.children {
        walk.push(c);
    }
    walk.step(node.points as u64, 0);
    walk.out
}

struct Walk<'a> {
    arena: &'a Arena,
    class: &'a BoardClass,
    sequence: &'a [usize],
    s_high: u64,
    stacks: Vec<Vec<ChoiceId>>,
    stack_bound: Vec<u64>,
    /// Sum of `stack_bound` over all cells not yet forced.
    outstanding: u64,
    /// Cells whose stacks were pushed to, for undoing.
    log: Vec<u8>,
    cells: Vec<Letter>,
    out: Vec<Candidate>,
}

impl Walk<'_> {
    fn push(&mut self, id: ChoiceId) {
        let c = self.arena.choice(id);
        let cell = c.cell as usize;
        self.stacks[cell].push(id);
        self.stack_bound[cell] += c.bound as u64;
        self.outstanding += c.bound as u64;
        self.log.push(c.cell);
    }

    fn undo(&mut self, mark: usize) {
        while self.log.len() > mark {
            let cell = self.log.pop().unwrap() as usize;
            let id = self.stacks[cell].pop().unwrap();
            let b = self.arena.choice(id).bound as u64;
            self.stack_bound[cell] -= b;
            self.outstanding -= b;
        }
    }

    fn step(&mut self, points: u64, idx: usize) {
        if points + self.outstanding < self.s_high {
            return;
        }
        if idx == self.sequence.len() {
            debug_assert_eq!(self.outstanding, 0);
            self.out.push(Candidate {
                board: Board::from_cells(self.class.dims(), self.cells.clone()),
                bound: points,
            });
            return;
        }
        let cell = self.sequence[idx];
        let here = std::mem::take(&mut self.stacks[cell]);
        let here_bound = self.stack_bound[cell];
        self.stack_bound[cell] = 0;
        self.outstanding -= here_bound;
        let class = self.class;
        for &letter in class.cell(cell) {
            let mark = self.log.len();
            let mut next_points = points;
            for &id in &here {
                if let Some(sub) = self.arena.choice(id).child(letter) {
                    let s = self.arena.sum(sub);
                    next_points += s.points as u64;
                    for &c in s.children {
                        self.push(c);
                    }
                }
            }
            self.cells[cell] = letter;
            self.step(next_points, idx + 1);
            self.undo(mark);
        }
        self.outstanding += here_bound;
        self.stack_bound[cell] = here_bound;
        self.stacks[cell] = here;
    }
}

/// Single-stack form of [`orderly_bound`]; slower, kept as a reference.
pub fn orderly_bound_reference(
    arena: &Arena,
    root: SumId,
    class: &BoardClass,
    sequence: &[usize],
    s_high: u64,
) -> Vec<Candidate> {
    #[allow(clippy::too_many_arguments)]
    fn step(
        arena: &Arena,
        class: &BoardClass,
        sequence: &[usize],
        s_high: u64,
        points: u64,
        idx: usize,
        cells: &mut Vec<Letter>,
        stack: &[ChoiceId],
        out: &mut Vec<Candidate>,
    ) {
        let b = points
            + stack
                .iter()
                .map(|&n| arena.choice(n).bound as u64)
                .sum::<u64>();
        if b < s_high {
            return;
        }
        if idx == sequence.len() {
            out.push(Candidate {
                board: Board::from_cells(class.dims(), cells.clone()),
                bound: b,
            });
            return;
        }
        let cell = sequence[idx];
        for &letter in class.cell(cell) {
            let mut next_stack: Vec<ChoiceId> = stack
                .iter()
                .copied()
                .filter(|&n| arena.choice(n).cell as usize != cell)
                .collect();
            let mut next_points = points;
            for &n in stack
                .iter()
                .filter(|&&n| arena.choice(n).cell as usize == cell)
            {
                if let Some(sub) = arena.choice(n).child(letter) {
                    next_stack.extend_from_slice(arena.sum(sub).children);
                    next_points += arena.sum(sub).points as u64;
                }
            }
            cells[cell] = letter;
            step(
                arena,
                class,
                sequence,
                s_high,
                next_points,
                idx + 1,
                cells,
                &next_stack,
                out,
            );
        }
    }

    let mut out = Vec::new();
    let mut cells = vec![0; class.dims().cells()];
    let node = arena.sum(root);
    step(
        arena,
        class,
        sequence,
        s_high,
        node.points as u64,
        0,
        &mut cells,
        node.children,
        &mut out,
    );
    out
}
