use rustc_hash::FxHashMap;

use super::{Arena, ChoiceId, SumId};
use crate::letters::Letter;

impl Arena {
    /// A tree whose force is the sum of the forces of `a` and `b`.
    /// Unshared subtrees are reused rather than copied.
    pub fn merge(&mut self, a: SumId, b: SumId) -> SumId {
        if self.is_empty(b) {
            return a;
        }
        if self.is_empty(a) {
            return b;
        }
        let (sa, sb) = (self.sum(a), self.sum(b));
        let points = sa.points.saturating_add(sb.points);
        let mut children = sa.children.to_vec();
        let other = sb.children.to_vec();
        for cb in other {
            let cell = self.choice(cb).cell;
            match children.iter().position(|&c| self.choice(c).cell == cell) {
                Some(i) => children[i] = self.merge_choice(children[i], cb),
                None => children.push(cb),
            }
        }
        self.make_sum(points, &children)
    }

    fn merge_choice(&mut self, a: ChoiceId, b: ChoiceId) -> ChoiceId {
        let cell = self.choice(a).cell;
        let mut children: Vec<(Letter, SumId)> = self.choice(a).children().collect();
        let other: Vec<(Letter, SumId)> = self.choice(b).children().collect();
        for (letter, sb) in other {
            match children.iter().position(|&(l, _)| l == letter) {
                Some(i) => children[i].1 = self.merge(children[i].1, sb),
                None => children.push((letter, sb)),
            }
        }
        self.make_choice(cell, &children)
    }

    fn is_empty(&self, id: SumId) -> bool {
        let s = self.sum(id);
        s.points == 0 && s.children.is_empty()
    }

    /// Splits an orderly tree on `cell`, returning one tree per letter in
    /// `letters`. `cell` must be the highest-ranked cell the tree uses, so
    /// its choice node (if any) is a direct child of `root`.
    ///
    /// The skip tree (everything except that choice node) is shared by all
    /// results. When the tree never uses `cell`, every result is `root`.
    pub fn branch(&mut self, root: SumId, cell: usize, letters: &[Letter]) -> Vec<SumId> {
        let node = self.sum(root);
        let Some(pos) = node
            .children
            .iter()
            .position(|&c| self.choice(c).cell as usize == cell)
        else {
            return vec![root; letters.len()];
        };
        let choice = node.children[pos];
        let mut rest = node.children.to_vec();
        rest.remove(pos);
        let points = node.points;
        let skip = self.make_sum(points, &rest);
        letters
            .iter()
            .map(|&letter| match self.choice(choice).child(letter) {
                Some(sub) => self.merge(skip, sub),
                None => skip,
            })
            .collect()
    }

    /// Like [`Arena::branch`] but works for any tree and any cell, by
    /// rebuilding every node that has `cell` somewhere below it.
    pub fn branch_anywhere(&mut self, root: SumId, cell: usize, letters: &[Letter]) -> Vec<SumId> {
        letters
            .iter()
            .map(|&letter| {
                let mut memo = FxHashMap::default();
                self.resolve(root, cell as u8, letter, &mut memo)
            })
            .collect()
    }

    fn resolve(
        &mut self,
        id: SumId,
        cell: u8,
        letter: Letter,
        memo: &mut FxHashMap<SumId, SumId>,
    ) -> SumId {
        if let Some(&done) = memo.get(&id) {
            return done;
        }
        let points = self.sum(id).points;
        let node_children = self.sum(id).children.to_vec();
        let mut changed = false;
        let mut children: Vec<ChoiceId> = Vec::with_capacity(node_children.len());
        let mut absorbed: Vec<SumId> = Vec::new();
        for c in node_children {
            let choice_cell = self.choice(c).cell;
            if choice_cell == cell {
                changed = true;
                if let Some(sub) = self.choice(c).child(letter) {
                    absorbed.push(self.resolve(sub, cell, letter, memo));
                }
                continue;
            }
            let old: Vec<(Letter, SumId)> = self.choice(c).children().collect();
            let mut kids = Vec::with_capacity(old.len());
            let mut kid_changed = false;
            for (l, s) in old {
                let r = self.resolve(s, cell, letter, memo);
                kid_changed |= r != s;
                kids.push((l, r));
            }
            if kid_changed {
                changed = true;
                children.push(self.make_choice(choice_cell, &kids));
            } else {
                children.push(c);
            }
        }
        let result = if changed {
            let mut out = self.make_sum(points, &children);
            for sub in absorbed {
                out = self.merge(out, sub);
            }
            out
        } else {
            id
        };
        memo.insert(id, result);
        result
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_tree, BuildOptions, PathOrder};
    use super::*;
    use crate::classes::BoardClass;
    use crate::geometry::{cell_order, Dims};
    use crate::lexicon::{Lexicon, Trie};
    use crate::scorer::ScoreTable;
    use proptest::prelude::*;

    fn small_trie() -> Trie {
        let words = [
            "tar", "tat", "rat", "art", "eat", "tea", "ate", "sea", "set", "tes", "rate", "tear",
            "seat", "east", "tare", "star", "rest", "aster", "stare", "tears", "teat", "treat",
        ];
        Trie::build(&Lexicon::from_lines(words, 3, "t").unwrap())
    }

    fn build(arena: &mut Arena, class: &BoardClass, trie: &Trie) -> SumId {
        let order = cell_order(class.dims());
        build_tree(
            arena,
            class,
            trie,
            &ScoreTable::classic(),
            BuildOptions::orderly(&order),
        )
    }

    #[test]
    fn merge_with_empty_is_identity() {
        let mut arena = Arena::new();
        let a = arena.new_sum();
        arena.add_word(a, &[(0, 1)], 3);
        let e = arena.new_sum();
        assert_eq!(arena.merge(a, e), a);
        assert_eq!(arena.merge(e, a), a);
    }

    #[test]
    fn branch_on_unused_cell_shares_root() {
        let mut arena = Arena::new();
        let a = arena.new_sum();
        arena.add_word(a, &[(0, 1)], 3);
        assert_eq!(arena.branch(a, 5, &[1, 2, 3]), vec![a, a, a]);
    }

    fn arb_class() -> impl Strategy<Value = BoardClass> {
        let dims: Dims = "2x3".parse().unwrap();
        let letters: Vec<Letter> = b"aerst".iter().map(|b| b - b'a').collect();
        proptest::collection::vec(proptest::sample::subsequence(letters, 1..=3), 6)
            .prop_map(move |cells| BoardClass::new(dims, cells).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn merge_adds_forces(c1 in arb_class(), c2 in arb_class()) {
            let trie = small_trie();
            let mut arena = Arena::new();
            let a = build(&mut arena, &c1, &trie);
            let b = build(&mut arena, &c2, &trie);
            let before_a: Vec<u64> = c1.boards().map(|x| arena.force(a, &x)).collect();
            let m = arena.merge(a, b);
            prop_assert_eq!(arena.bound(m) as u64, arena.recompute_bound(m));
            prop_assert!(arena.bound(m) <= arena.bound(a) + arena.bound(b));
            for board in c1.boards().take(50) {
                prop_assert_eq!(
                    arena.force(m, &board),
                    arena.force(a, &board) + arena.force(b, &board)
                );
            }
            let after_a: Vec<u64> = c1.boards().map(|x| arena.force(a, &x)).collect();
            prop_assert_eq!(before_a, after_a);
        }

        #[test]
        fn branch_preserves_force_and_bounds(class in arb_class()) {
            let trie = small_trie();
            let mut arena = Arena::new();
            let root = build(&mut arena, &class, &trie);
            let top = cell_order(class.dims()).sequence()[0];
            let letters = class.cell(top).to_vec();
            let subs = arena.branch(root, top, &letters);
            let general = arena.branch_anywhere(root, top, &letters);
            for ((&l, &s), &g) in letters.iter().zip(&subs).zip(&general) {
                prop_assert!(arena.bound(s) <= arena.bound(root));
                prop_assert_eq!(arena.bound(s) as u64, arena.recompute_bound(s));
                let sub_class = class.with_cell(top, l);
                for board in sub_class.boards() {
                    prop_assert_eq!(arena.force(s, &board), arena.force(root, &board));
                    prop_assert_eq!(arena.force(g, &board), arena.force(root, &board));
                }
            }
        }

        #[test]
        fn branch_anywhere_on_spelling_trees(class in arb_class(), cell in 0usize..6) {
            let trie = small_trie();
            let mut arena = Arena::new();
            let root = build_tree(
                &mut arena,
                &class,
                &trie,
                &ScoreTable::classic(),
                BuildOptions { order: PathOrder::Spelling, dedupe: false },
            );
            let letters = class.cell(cell).to_vec();
            let subs = arena.branch_anywhere(root, cell, &letters);
            for (&l, &s) in letters.iter().zip(&subs) {
                prop_assert!(arena.bound(s) <= arena.bound(root));
                prop_assert_eq!(arena.cells_used(s) & (1 << cell), 0);
                for board in class.with_cell(cell, l).boards() {
                    prop_assert_eq!(arena.force(s, &board), arena.force(root, &board));
                }
            }
        }
    }
}
