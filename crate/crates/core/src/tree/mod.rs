//! Sum/Choice trees over board classes.
//!
//! A tree alternates two node kinds. A [`SumNode`] adds up its own points
//! and the values of all its children; a [`ChoiceNode`] picks the child whose
//! letter matches the board at its cell. Evaluating a tree at a board
//! ([`Arena::force`]) gives the (de-duplicated) Multiboggle score, and the
//! cached bound (max at choices, sum at sums) bounds it over the whole class.
//!
//! Nodes live in an [`Arena`] owned by one task. Trees produced by
//! [`Arena::merge`] and [`Arena::branch`] share subtrees, so nodes are
//! treated as immutable once they are reachable from more than one root.

mod build;
mod merge;
mod orderly;

pub use build::{build_tree, BuildOptions, PathOrder};
pub use orderly::{orderly_bound, orderly_bound_reference, Candidate};

use crate::geometry::Board;
use crate::letters::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumId(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChoiceId(u32);

/// A run of entries in one of the arena's child pools. Runs grow by
/// relocating to the end of the pool with doubled capacity.
#[derive(Debug, Clone, Copy, Default)]
struct Span {
    start: u32,
    len: u8,
    cap: u8,
}

impl Span {
    fn range(self) -> std::ops::Range<usize> {
        self.start as usize..self.start as usize + self.len as usize
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct SumData {
    points: u32,
    bound: u32,
    children: Span,
}

#[derive(Debug, Clone, Copy)]
struct ChoiceData {
    cell: u8,
    bound: u32,
    children: Span,
}

/// Read-only view of a sum node.
#[derive(Debug, Clone, Copy)]
pub struct SumNode<'a> {
    /// Points on this node alone, not a bound for the subtree.
    pub points: u32,
    pub bound: u32,
    /// Choice nodes, at most one per cell.
    pub children: &'a [ChoiceId],
}

/// Read-only view of a choice node.
#[derive(Debug, Clone, Copy)]
pub struct ChoiceNode<'a> {
    pub cell: u8,
    pub bound: u32,
    pub letters: &'a [Letter],
    pub sums: &'a [SumId],
}

impl ChoiceNode<'_> {
    #[inline]
    pub fn child(&self, letter: Letter) -> Option<SumId> {
        self.letters
            .iter()
            .position(|&l| l == letter)
            .map(|i| self.sums[i])
    }

    pub fn children(&self) -> impl Iterator<Item = (Letter, SumId)> + '_ {
        self.letters.iter().copied().zip(self.sums.iter().copied())
    }
}

/// Node storage for one class task.
///
/// Nodes are fixed-size records; their child lists live in two shared pools,
/// so building a tree does not allocate per node.
#[derive(Debug, Clone, Default)]
pub struct Arena {
    sums: Vec<SumData>,
    choices: Vec<ChoiceData>,
    sum_pool: Vec<ChoiceId>,
    letter_pool: Vec<Letter>,
    choice_pool: Vec<SumId>,
}

impl Arena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_sum(&mut self) -> SumId {
        self.sums.push(SumData::default());
        SumId((self.sums.len() - 1) as u32)
    }

    #[inline]
    pub fn sum(&self, id: SumId) -> SumNode<'_> {
        let d = &self.sums[id.0 as usize];
        SumNode {
            points: d.points,
            bound: d.bound,
            children: &self.sum_pool[d.children.range()],
        }
    }

    #[inline]
    pub fn choice(&self, id: ChoiceId) -> ChoiceNode<'_> {
        let d = &self.choices[id.0 as usize];
        ChoiceNode {
            cell: d.cell,
            bound: d.bound,
            letters: &self.letter_pool[d.children.range()],
            sums: &self.choice_pool[d.children.range()],
        }
    }

    /// Nodes of both kinds allocated so far.
    pub fn allocated(&self) -> usize {
        self.sums.len() + self.choices.len()
    }

    /// Approximate heap use in bytes, pools included.
    pub fn memory_bytes(&self) -> usize {
        self.sums.capacity() * std::mem::size_of::<SumData>()
            + self.choices.capacity() * std::mem::size_of::<ChoiceData>()
            + self.sum_pool.capacity() * std::mem::size_of::<ChoiceId>()
            + self.letter_pool.capacity()
            + self.choice_pool.capacity() * std::mem::size_of::<SumId>()
    }

    /// Cached upper bound U of a tree.
    #[inline]
    pub fn bound(&self, root: SumId) -> u32 {
        self.sums[root.0 as usize].bound
    }

    /// A sum node with the given points and children; its bound is computed
    /// from the children's cached bounds.
    pub(crate) fn make_sum(&mut self, points: u32, children: &[ChoiceId]) -> SumId {
        let bound = children.iter().fold(points, |acc, &c| {
            acc.saturating_add(self.choices[c.0 as usize].bound)
        });
        let start = self.sum_pool.len() as u32;
        self.sum_pool.extend_from_slice(children);
        let len = u8::try_from(children.len()).expect("at most 64 cells");
        self.sums.push(SumData {
            points,
            bound,
            children: Span {
                start,
                len,
                cap: len,
            },
        });
        SumId((self.sums.len() - 1) as u32)
    }

    /// A choice node over `cell` with the given children; its bound is the
    /// largest child bound.
    pub(crate) fn make_choice(&mut self, cell: u8, children: &[(Letter, SumId)]) -> ChoiceId {
        let bound = children
            .iter()
            .map(|&(_, s)| self.bound(s))
            .max()
            .unwrap_or(0);
        let start = self.letter_pool.len() as u32;
        self.letter_pool.extend(children.iter().map(|&(l, _)| l));
        self.choice_pool.extend(children.iter().map(|&(_, s)| s));
        let len = u8::try_from(children.len()).expect("at most 26 letters");
        self.choices.push(ChoiceData {
            cell,
            bound,
            children: Span {
                start,
                len,
                cap: len,
            },
        });
        ChoiceId((self.choices.len() - 1) as u32)
    }

    fn append_sum_child(&mut self, node: SumId, child: ChoiceId) {
        let span = &mut self.sums[node.0 as usize].children;
        if span.len == span.cap {
            let cap = span.cap.saturating_mul(2).max(2);
            let start = self.sum_pool.len();
            self.sum_pool.extend_from_within(span.range());
            self.sum_pool
                .resize(start + cap as usize, ChoiceId(u32::MAX));
            span.start = start as u32;
            span.cap = cap;
        }
        self.sum_pool[span.start as usize + span.len as usize] = child;
        span.len += 1;
    }

    fn append_choice_child(&mut self, node: ChoiceId, letter: Letter, child: SumId) {
        let span = &mut self.choices[node.0 as usize].children;
        if span.len == span.cap {
            let cap = span.cap.saturating_mul(2).max(2);
            let start = self.choice_pool.len();
            self.letter_pool.extend_from_within(span.range());
            self.letter_pool.resize(start + cap as usize, 0);
            self.choice_pool.extend_from_within(span.range());
            self.choice_pool
                .resize(start + cap as usize, SumId(u32::MAX));
            span.start = start as u32;
            span.cap = cap;
        }
        let at = span.start as usize + span.len as usize;
        self.letter_pool[at] = letter;
        self.choice_pool[at] = child;
        span.len += 1;
    }

    /// Adds `points` at the end of `path`, creating missing nodes and
    /// raising the cached bounds along the way. Returns the terminal node.
    ///
    /// Only valid while the nodes on the path are not shared with another
    /// tree (i.e. during construction).
    pub fn add_word(&mut self, root: SumId, path: &[(usize, Letter)], points: u32) -> SumId {
        let mut trail: Vec<(SumId, ChoiceId)> = Vec::with_capacity(path.len());
        let terminal = self.descend(root, path, &mut trail);
        self.add_points(terminal, &trail, points);
        terminal
    }

    /// Finds or creates the node at the end of `path`, recording the
    /// (parent sum, choice) pairs passed through.
    pub(crate) fn descend(
        &mut self,
        root: SumId,
        path: &[(usize, Letter)],
        trail: &mut Vec<(SumId, ChoiceId)>,
    ) -> SumId {
        trail.clear();
        let mut node = root;
        for &(cell, letter) in path {
            let (choice, next) = self.step(node, cell, letter);
            trail.push((node, choice));
            node = next;
        }
        node
    }

    /// Like [`Self::descend`], but keeps the first `keep` steps of a previous
    /// descent. `nodes` holds the sums reached after each step, starting at
    /// the root.
    pub(crate) fn descend_from(
        &mut self,
        keep: usize,
        path: &[(usize, Letter)],
        nodes: &mut Vec<SumId>,
        trail: &mut Vec<(SumId, ChoiceId)>,
    ) -> SumId {
        nodes.truncate(keep + 1);
        trail.truncate(keep);
        let mut node = nodes[keep];
        for &(cell, letter) in &path[keep..] {
            let (choice, next) = self.step(node, cell, letter);
            trail.push((node, choice));
            nodes.push(next);
            node = next;
        }
        node
    }

    fn step(&mut self, node: SumId, cell: usize, letter: Letter) -> (ChoiceId, SumId) {
        let existing = self
            .sum(node)
            .children
            .iter()
            .copied()
            .find(|&c| self.choices[c.0 as usize].cell as usize == cell);
        let choice = match existing {
            Some(c) => c,
            None => {
                self.choices.push(ChoiceData {
                    cell: cell as u8,
                    bound: 0,
                    children: Span::default(),
                });
                let c = ChoiceId((self.choices.len() - 1) as u32);
                self.append_sum_child(node, c);
                c
            }
        };
        let next = match self.choice(choice).child(letter) {
            Some(s) => s,
            None => {
                let s = self.new_sum();
                self.append_choice_child(choice, letter, s);
                s
            }
        };
        (choice, next)
    }

    pub(crate) fn add_points(&mut self, terminal: SumId, trail: &[(SumId, ChoiceId)], points: u32) {
        let t = &mut self.sums[terminal.0 as usize];
        t.points = t.points.saturating_add(points);
        t.bound = t.bound.saturating_add(points);
        let mut child_bound = t.bound;
        for &(parent, choice) in trail.iter().rev() {
            let c = &mut self.choices[choice.0 as usize];
            if child_bound <= c.bound {
                break;
            }
            let delta = child_bound - c.bound;
            c.bound = child_bound;
            let p = &mut self.sums[parent.0 as usize];
            p.bound = p.bound.saturating_add(delta);
            child_bound = p.bound;
        }
    }

    /// F(T, B): the sum over all paths in the tree compatible with `board`.
    pub fn force(&self, root: SumId, board: &Board) -> u64 {
        self.force_cells(root, board.cells())
    }

    pub fn force_cells(&self, root: SumId, cells: &[Letter]) -> u64 {
        let node = self.sum(root);
        node.points as u64
            + node
                .children
                .iter()
                .map(|&c| {
                    let choice = self.choice(c);
                    choice
                        .child(cells[choice.cell as usize])
                        .map_or(0, |s| self.force_cells(s, cells))
                })
                .sum::<u64>()
    }

    /// U(T) recomputed from scratch, ignoring the cached bounds.
    pub fn recompute_bound(&self, root: SumId) -> u64 {
        let node = self.sum(root);
        node.points as u64
            + node
                .children
                .iter()
                .map(|&c| {
                    self.choice(c)
                        .sums
                        .iter()
                        .map(|&s| self.recompute_bound(s))
                        .max()
                        .unwrap_or(0)
                })
                .sum::<u64>()
    }

    /// Nodes reachable from `root` (sum and choice nodes, root included).
    pub fn node_count(&self, root: SumId) -> usize {
        1 + self
            .sum(root)
            .children
            .iter()
            .map(|&c| {
                1 + self
                    .choice(c)
                    .sums
                    .iter()
                    .map(|&s| self.node_count(s))
                    .sum::<usize>()
            })
            .sum::<usize>()
    }

    /// Distinct cells referenced anywhere below `root`.
    pub fn cells_used(&self, root: SumId) -> u64 {
        let mut mask = 0u64;
        let mut stack = vec![root];
        while let Some(s) = stack.pop() {
            for &c in self.sum(s).children {
                let choice = self.choice(c);
                mask |= 1 << choice.cell;
                stack.extend_from_slice(choice.sums);
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn compatible(path: &[(usize, Letter)], cells: &[Letter]) -> bool {
        path.iter().all(|&(c, l)| cells[c] == l)
    }

    #[test]
    fn single_insertion() {
        let mut arena = Arena::new();
        let root = arena.new_sum();
        let t = arena.add_word(root, &[(3, 19)], 1);
        assert_eq!(arena.sum(root).children.len(), 1);
        let c = arena.choice(arena.sum(root).children[0]);
        assert_eq!(c.cell, 3);
        assert_eq!(c.child(19), Some(t));
        assert_eq!(arena.sum(t).points, 1);
        assert_eq!(arena.node_count(root), 3);
        assert_eq!(arena.bound(root), 1);
    }

    #[test]
    fn repeated_insertion_accumulates() {
        let mut arena = Arena::new();
        let root = arena.new_sum();
        let path = [(0, 1), (1, 2), (2, 3)];
        let a = arena.add_word(root, &path, 1);
        let b = arena.add_word(root, &path, 1);
        assert_eq!(a, b);
        assert_eq!(arena.sum(a).points, 2);
        assert_eq!(arena.bound(root), 2);
    }

    #[test]
    fn leaf_bound_is_points() {
        let mut arena = Arena::new();
        let root = arena.new_sum();
        arena.add_word(root, &[], 7);
        assert_eq!(arena.bound(root), 7);
        assert_eq!(arena.recompute_bound(root), 7);
    }

    fn arb_path() -> impl Strategy<Value = Vec<(usize, Letter)>> {
        proptest::sample::subsequence((0..6).collect::<Vec<usize>>(), 1..=6)
            .prop_shuffle()
            .prop_flat_map(|cells| {
                let n = cells.len();
                (Just(cells), proptest::collection::vec(0u8..2, n))
            })
            .prop_map(|(cells, letters)| cells.into_iter().zip(letters).collect())
    }

    proptest! {
        #[test]
        fn add_word_is_a_container(
            paths in proptest::collection::vec((arb_path(), 1u32..5), 1..25),
            boards in proptest::collection::vec(proptest::collection::vec(0u8..2, 6), 8),
        ) {
            let mut arena = Arena::new();
            let root = arena.new_sum();
            let mut expected = vec![0u64; boards.len()];
            for (path, pts) in &paths {
                arena.add_word(root, path, *pts);
                for (b, exp) in boards.iter().zip(expected.iter_mut()) {
                    if compatible(path, b) {
                        *exp += *pts as u64;
                    }
                    prop_assert_eq!(arena.force_cells(root, b), *exp);
                }
                prop_assert_eq!(arena.bound(root) as u64, arena.recompute_bound(root));
            }
            for b in &boards {
                prop_assert!(arena.bound(root) as u64 >= arena.force_cells(root, b));
            }
        }

        #[test]
        fn path_order_does_not_change_force(
            paths in proptest::collection::vec((arb_path(), 1u32..5), 1..15),
            seed in any::<u64>(),
            boards in proptest::collection::vec(proptest::collection::vec(0u8..2, 6), 8),
        ) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut a = Arena::new();
            let ra = a.new_sum();
            let mut b = Arena::new();
            let rb = b.new_sum();
            for (path, pts) in &paths {
                a.add_word(ra, path, *pts);
                let mut shuffled = path.clone();
                shuffled.shuffle(&mut rng);
                b.add_word(rb, &shuffled, *pts);
            }
            for board in &boards {
                prop_assert_eq!(a.force_cells(ra, board), b.force_cells(rb, board));
            }
        }
    }
}
