use std::collections::VecDeque;

use super::{letter_length, Lexicon};
use crate::letters::{Letter, ALPHABET_SIZE};

const NO_WORD: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

// Children of a node are stored contiguously; `mask` has one bit per present
// letter and a child's slot is found by popcount.
#[derive(Debug, Clone, Copy)]
struct Node {
    mask: u32,
    first_child: u32,
    word_id: u32,
    word_len: u8,
}

/// Immutable prefix tree over a [`Lexicon`].
#[derive(Debug, Clone)]
pub struct Trie {
    nodes: Vec<Node>,
    num_words: usize,
}

impl Trie {
    pub fn build(lexicon: &Lexicon) -> Self {
        Self::from_symbol_words(lexicon.symbol_words())
    }

    /// Builds from symbol words; word ids follow iteration order of first
    /// occurrence.
    pub fn from_symbol_words<I, W>(words: I) -> Self
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[Letter]>,
    {
        // Pointer-style scratch trie, re-laid out breadth first below.
        let mut kids: Vec<[u32; ALPHABET_SIZE]> = vec![[0; ALPHABET_SIZE]];
        let mut word_ids: Vec<u32> = vec![NO_WORD];
        let mut word_lens: Vec<u8> = vec![0];
        let mut num_words = 0u32;
        for word in words {
            let word = word.as_ref();
            let mut node = 0usize;
            for &l in word {
                let next = kids[node][l as usize];
                node = if next == 0 {
                    kids.push([0; ALPHABET_SIZE]);
                    word_ids.push(NO_WORD);
                    word_lens.push(0);
                    let id = (kids.len() - 1) as u32;
                    kids[node][l as usize] = id;
                    id as usize
                } else {
                    next as usize
                };
            }
            if word_ids[node] == NO_WORD && !word.is_empty() {
                word_ids[node] = num_words;
                word_lens[node] = letter_length(word).min(u8::MAX as usize) as u8;
                num_words += 1;
            }
        }

        let mut nodes = Vec::with_capacity(kids.len());
        let mut queue = VecDeque::from([0usize]);
        let mut next_free = 1u32;
        while let Some(old) = queue.pop_front() {
            let mut mask = 0u32;
            for (l, &c) in kids[old].iter().enumerate() {
                if c != 0 {
                    mask |= 1 << l;
                    queue.push_back(c as usize);
                }
            }
            nodes.push(Node {
                mask,
                first_child: next_free,
                word_id: word_ids[old],
                word_len: word_lens[old],
            });
            next_free += mask.count_ones();
        }
        Trie {
            nodes,
            num_words: num_words as usize,
        }
    }

    #[inline]
    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    #[inline]
    pub fn child(&self, node: NodeId, letter: Letter) -> Option<NodeId> {
        let n = &self.nodes[node.index()];
        let bit = 1u32 << letter;
        if n.mask & bit == 0 {
            return None;
        }
        Some(NodeId(n.first_child + (n.mask & (bit - 1)).count_ones()))
    }

    #[inline]
    pub fn has_child(&self, node: NodeId, letter: Letter) -> bool {
        self.nodes[node.index()].mask & (1 << letter) != 0
    }

    #[inline]
    pub fn is_word(&self, node: NodeId) -> bool {
        self.nodes[node.index()].word_id != NO_WORD
    }

    /// Letter length of the word ending here (0 for non-word nodes).
    #[inline]
    pub fn word_length(&self, node: NodeId) -> usize {
        self.nodes[node.index()].word_len as usize
    }

    #[inline]
    pub fn word_id(&self, node: NodeId) -> Option<u32> {
        let id = self.nodes[node.index()].word_id;
        (id != NO_WORD).then_some(id)
    }

    pub fn num_words(&self) -> usize {
        self.num_words
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn lookup(&self, symbols: &[Letter]) -> Option<NodeId> {
        symbols
            .iter()
            .try_fold(self.root(), |node, &l| self.child(node, l))
    }

    pub fn contains(&self, symbols: &[Letter]) -> bool {
        self.lookup(symbols).is_some_and(|n| self.is_word(n))
    }

    /// Every stored word, in lexicographic symbol order.
    pub fn words(&self) -> Vec<Vec<Letter>> {
        let mut out = Vec::with_capacity(self.num_words);
        let mut prefix = Vec::new();
        self.collect(self.root(), &mut prefix, &mut out);
        out
    }

    fn collect(&self, node: NodeId, prefix: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if self.is_word(node) {
            out.push(prefix.clone());
        }
        let mask = self.nodes[node.index()].mask;
        for l in 0..ALPHABET_SIZE as Letter {
            if mask & (1 << l) != 0 {
                prefix.push(l);
                self.collect(self.child(node, l).unwrap(), prefix, out);
                prefix.pop();
            }
        }
    }
}

/// Per-search "already found" marks over a trie's words.
///
/// Resetting bumps a generation counter, so it costs O(1) regardless of how
/// many words were marked. Each concurrent search owns its own marks.
#[derive(Debug, Clone)]
pub struct WordMarks {
    stamps: Vec<u32>,
    generation: u32,
}

impl WordMarks {
    pub fn new(trie: &Trie) -> Self {
        Self {
            stamps: vec![0; trie.num_words()],
            generation: 1,
        }
    }

    /// Marks a word; returns `true` if it was not yet marked.
    #[inline]
    pub fn mark(&mut self, word_id: u32) -> bool {
        let slot = &mut self.stamps[word_id as usize];
        if *slot == self.generation {
            false
        } else {
            *slot = self.generation;
            true
        }
    }

    #[inline]
    pub fn is_marked(&self, word_id: u32) -> bool {
        self.stamps[word_id as usize] == self.generation
    }

    pub fn reset(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamps.fill(0);
            self.generation = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letters::parse_symbols;
    use proptest::prelude::*;

    fn trie_of(words: &[&str]) -> Trie {
        let lex = Lexicon::from_lines(words.iter().copied(), 3, "t").unwrap();
        Trie::build(&lex)
    }

    fn sym(s: &str) -> Vec<Letter> {
        parse_symbols(s).unwrap()
    }

    #[test]
    fn ate_and_tea() {
        let trie = trie_of(&["ate", "tea"]);
        let a = trie.child(trie.root(), 0).unwrap();
        let at = trie.child(a, sym("t")[0]).unwrap();
        let ate = trie.child(at, sym("e")[0]).unwrap();
        assert!(trie.is_word(ate));
        assert!(!trie.is_word(at));
        assert_eq!(trie.word_length(ate), 3);
        assert!(!trie.has_child(trie.root(), sym("b")[0]));
    }

    #[test]
    fn quail_counts_qu_twice() {
        let trie = trie_of(&["quail"]);
        let node = trie.lookup(&sym("qail")).unwrap();
        assert!(trie.is_word(node));
        assert_eq!(trie.word_length(node), 5);
        assert!(trie.lookup(&sym("quail")).is_none());
    }

    #[test]
    fn marks_reset_in_constant_time() {
        let trie = trie_of(&["ate", "tea", "eat"]);
        let mut marks = WordMarks::new(&trie);
        assert!(marks.mark(1));
        assert!(!marks.mark(1));
        marks.reset();
        assert!(!marks.is_marked(1));
        assert!(marks.mark(1));
    }

    #[test]
    fn generation_wraparound_clears() {
        let trie = trie_of(&["ate"]);
        let mut marks = WordMarks::new(&trie);
        marks.generation = u32::MAX;
        marks.mark(0);
        marks.reset();
        assert_eq!(marks.generation, 1);
        assert!(!marks.is_marked(0));
    }

    proptest! {
        #[test]
        fn round_trip(words in proptest::collection::btree_set("[a-fq]{1,7}", 1..60)) {
            let lines: Vec<String> = words.iter().map(|w| w.replace('q', "qu")).collect();
            let Ok(lex) = Lexicon::from_lines(&lines, 1, "p") else { return Ok(()); };
            let trie = Trie::build(&lex);
            let back: Vec<String> = trie.words().iter().map(|w| crate::letters::render(w)).collect();
            prop_assert_eq!(back.as_slice(), lex.words());
            for w in trie.words() {
                let node = trie.lookup(&w).unwrap();
                let qs = w.iter().filter(|&&l| l == crate::letters::QU).count();
                prop_assert_eq!(trie.word_length(node), w.len() + qs);
            }
        }
    }
}
