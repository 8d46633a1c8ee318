use rustc_hash::FxHashSet;

use super::{Arena, ChoiceId, SumId};
use crate::classes::BoardClass;
use crate::geometry::{Adjacency, CellOrder};
use crate::letters::Letter;
use crate::lexicon::{NodeId, Trie};
use crate::scorer::ScoreTable;

/// How word paths are arranged before insertion.
#[derive(Debug, Clone, Copy)]
pub enum PathOrder<'a> {
    /// Cells sorted by descending rank (an orderly tree).
    Orderly(&'a CellOrder),
    /// Cells in the order the word is spelled.
    Spelling,
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions<'a> {
    pub order: PathOrder<'a>,
    /// Insert each word at most once per terminal node. For orderly trees
    /// this makes F(T, B) the de-duplicated Multiboggle score D(B).
    pub dedupe: bool,
}

impl<'a> BuildOptions<'a> {
    pub fn orderly(order: &'a CellOrder) -> Self {
        Self {
            order: PathOrder::Orderly(order),
            dedupe: true,
        }
    }

    pub fn dedupe(self, dedupe: bool) -> Self {
        Self { dedupe, ..self }
    }
}

/// Builds the Sum/Choice tree holding every path to a word in `class`.
pub fn build_tree(
    arena: &mut Arena,
    class: &BoardClass,
    trie: &Trie,
    table: &ScoreTable,
    options: BuildOptions<'_>,
) -> SumId {
    let root = arena.new_sum();
    let mut builder = Builder {
        arena,
        class,
        trie,
        table,
        options,
        adjacency: Adjacency::new(class.dims()),
        choices: Vec::with_capacity(class.dims().cells()),
        sorted: Vec::with_capacity(class.dims().cells()),
        previous: Vec::with_capacity(class.dims().cells()),
        nodes: vec![root],
        trail: Vec::new(),
        seen: FxHashSet::default(),
    };
    for cell in 0..class.dims().cells() {
        builder.choice_step(cell, trie.root(), 0);
    }
    root
}

struct Builder<'a, 'o> {
    arena: &'a mut Arena,
    class: &'a BoardClass,
    trie: &'a Trie,
    table: &'a ScoreTable,
    options: BuildOptions<'o>,
    adjacency: Adjacency,
    choices: Vec<(usize, Letter)>,
    sorted: Vec<(usize, Letter)>,
    // Last inserted path; `nodes` and `trail` still describe its descent.
    previous: Vec<(usize, Letter)>,
    nodes: Vec<SumId>,
    trail: Vec<(SumId, ChoiceId)>,
    seen: FxHashSet<(SumId, NodeId)>,
}

impl Builder<'_, '_> {
    fn choice_step(&mut self, cell: usize, node: NodeId, used: u64) {
        let class = self.class;
        for &letter in class.cell(cell) {
            if let Some(child) = self.trie.child(node, letter) {
                self.choices.push((cell, letter));
                self.sum_step(cell, child, used | (1 << cell));
                self.choices.pop();
            }
        }
    }

    fn sum_step(&mut self, cell: usize, node: NodeId, used: u64) {
        if self.trie.is_word(node) {
            self.insert(node);
        }
        for i in 0..self.adjacency.of(cell).len() {
            let next = self.adjacency.of(cell)[i];
            if used & (1 << next) == 0 {
                self.choice_step(next, node, used);
            }
        }
    }

    fn insert(&mut self, word: NodeId) {
        self.sorted.clear();
        self.sorted.extend_from_slice(&self.choices);
        if let PathOrder::Orderly(order) = self.options.order {
            self.sorted
                .sort_unstable_by_key(|&(cell, _)| std::cmp::Reverse(order.rank(cell)));
        }
        let points = self.table.points(self.trie.word_length(word));
        let keep = self
            .sorted
            .iter()
            .zip(&self.previous)
            .take_while(|(a, b)| a == b)
            .count();
        let terminal =
            self.arena
                .descend_from(keep, &self.sorted, &mut self.nodes, &mut self.trail);
        std::mem::swap(&mut self.previous, &mut self.sorted);
        if self.options.dedupe && !self.seen.insert((terminal, word)) {
            return;
        }
        self.arena.add_points(terminal, &self.trail, points);
    }
}
