//! Letter buckets, board classes and symmetry-filtered class enumeration.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{Board, Dims, SymmetryGroup};
use crate::letters::{self, Letter, ALPHABET_SIZE};

/// A partition of the alphabet into disjoint buckets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LetterBuckets {
    buckets: Vec<Vec<Letter>>,
}

impl LetterBuckets {
    /// The fixed partitions for 1 to 4 buckets.
    pub fn new(n: usize) -> Result<Self> {
        let spec: &[&str] = match n {
            1 => &["abcdefghijklmnopqrstuvwxyz"],
            2 => &["aeiosuy", "bcdfghjklmnpqrtvwxz"],
            3 => &["aeijou", "bcdfgmnpqvwxz", "hklrsty"],
            4 => &["aeiou", "bdfgjqvwxz", "lnrsy", "chkmpt"],
            _ => return Err(Error::Buckets(n)),
        };
        Ok(Self {
            buckets: spec
                .iter()
                .map(|s| letters::parse_symbols(s).expect("constant buckets"))
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn bucket(&self, i: usize) -> &[Letter] {
        &self.buckets[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Letter]> {
        self.buckets.iter().map(Vec::as_slice)
    }

    pub fn bucket_of(&self, letter: Letter) -> usize {
        self.buckets
            .iter()
            .position(|b| b.contains(&letter))
            .expect("buckets cover the alphabet")
    }
}

pub fn buckets(n: usize) -> Result<LetterBuckets> {
    LetterBuckets::new(n)
}

/// Bucket count per cell: one count for corners and one for every other
/// cell. Written `N` (uniform) or `C:O`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BucketSpec {
    pub corners: usize,
    pub other: usize,
}

impl BucketSpec {
    pub fn uniform(n: usize) -> Self {
        Self {
            corners: n,
            other: n,
        }
    }
}

impl FromStr for BucketSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BucketSpec(s.to_string());
        let spec = match s.split_once(':') {
            Some((c, o)) => BucketSpec {
                corners: c.trim().parse().map_err(|_| bad())?,
                other: o.trim().parse().map_err(|_| bad())?,
            },
            None => BucketSpec::uniform(s.trim().parse().map_err(|_| bad())?),
        };
        LetterBuckets::new(spec.corners)?;
        LetterBuckets::new(spec.other)?;
        Ok(spec)
    }
}

impl fmt::Display for BucketSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.corners == self.other {
            write!(f, "{}", self.other)
        } else {
            write!(f, "{}:{}", self.corners, self.other)
        }
    }
}

/// Per-cell bucket partitions for a board size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bucketing {
    dims: Dims,
    per_cell: Vec<LetterBuckets>,
}

impl Bucketing {
    pub fn new(dims: Dims, spec: BucketSpec) -> Result<Self> {
        let corner = LetterBuckets::new(spec.corners)?;
        let other = LetterBuckets::new(spec.other)?;
        let per_cell = (0..dims.cells())
            .map(|c| {
                if dims.is_corner(c) {
                    corner.clone()
                } else {
                    other.clone()
                }
            })
            .collect();
        Ok(Self { dims, per_cell })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn cell(&self, cell: usize) -> &LetterBuckets {
        &self.per_cell[cell]
    }

    /// Total number of bucket assignments (before symmetry filtering).
    pub fn assignments(&self) -> u128 {
        self.per_cell.iter().map(|b| b.len() as u128).product()
    }

    pub fn class_for(&self, assignment: &[u8]) -> BoardClass {
        BoardClass {
            dims: self.dims,
            cells: assignment
                .iter()
                .enumerate()
                .map(|(c, &b)| self.per_cell[c].bucket(b as usize).to_vec())
                .collect(),
        }
    }

    /// The class of the given board's buckets, oriented as the board is.
    pub fn class_containing(&self, board: &Board) -> BoardClass {
        let assignment: Vec<u8> = board
            .cells()
            .iter()
            .enumerate()
            .map(|(c, &l)| self.per_cell[c].bucket_of(l) as u8)
            .collect();
        self.class_for(&assignment)
    }
}

/// A set of boards given by an allowed letter set per cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoardClass {
    dims: Dims,
    cells: Vec<Vec<Letter>>,
}

impl BoardClass {
    /// Letter sets are sorted and de-duplicated; none may be empty.
    pub fn new(dims: Dims, mut cells: Vec<Vec<Letter>>) -> Result<Self> {
        if cells.len() != dims.cells() {
            return Err(Error::Class {
                text: format!("{cells:?}"),
                reason: format!(
                    "expected {} cells for {dims}, got {}",
                    dims.cells(),
                    cells.len()
                ),
            });
        }
        for set in &mut cells {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() || set.iter().any(|&l| l as usize >= ALPHABET_SIZE) {
                return Err(Error::Class {
                    text: format!("{set:?}"),
                    reason: "every cell needs at least one letter a-z".into(),
                });
            }
        }
        Ok(Self { dims, cells })
    }

    /// Parses whitespace-separated letter sets in row-major order, e.g.
    /// `"t ae i r"`.
    pub fn parse(text: &str, dims: Dims) -> Result<Self> {
        let mut cells = Vec::new();
        for token in text.split_whitespace() {
            let set = letters::parse_symbols(token).ok_or_else(|| Error::Class {
                text: text.to_string(),
                reason: format!("{token:?} contains a non-letter"),
            })?;
            cells.push(set);
        }
        Self::new(dims, cells).map_err(|e| match e {
            Error::Class { reason, .. } => Error::Class {
                text: text.to_string(),
                reason,
            },
            other => other,
        })
    }

    pub fn singleton(board: &Board) -> Self {
        Self {
            dims: board.dims(),
            cells: board.cells().iter().map(|&l| vec![l]).collect(),
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn cell(&self, cell: usize) -> &[Letter] {
        &self.cells[cell]
    }

    pub fn cells(&self) -> &[Vec<Letter>] {
        &self.cells
    }

    /// Number of boards in the class.
    pub fn size(&self) -> u128 {
        self.cells.iter().map(|c| c.len() as u128).product()
    }

    pub fn contains(&self, board: &Board) -> bool {
        board.dims() == self.dims
            && board
                .cells()
                .iter()
                .zip(&self.cells)
                .all(|(l, set)| set.contains(l))
    }

    /// One class per letter of `cell`, identical elsewhere.
    pub fn split_cell(&self, cell: usize) -> Result<Vec<BoardClass>> {
        if self.cells[cell].len() < 2 {
            return Err(Error::SplitSingleton { cell });
        }
        Ok(self.cells[cell]
            .iter()
            .map(|&l| self.with_cell(cell, l))
            .collect())
    }

    /// A copy with `cell` fixed to `letter`.
    pub fn with_cell(&self, cell: usize, letter: Letter) -> BoardClass {
        let mut cells = self.cells.clone();
        cells[cell] = vec![letter];
        BoardClass {
            dims: self.dims,
            cells,
        }
    }

    /// Every board in the class, in odometer order (last cell fastest).
    pub fn boards(&self) -> impl Iterator<Item = Board> + '_ {
        let n = self.cells.len();
        let mut digits = vec![0usize; n];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let board = Board::from_cells(
                self.dims,
                digits.iter().zip(&self.cells).map(|(&d, s)| s[d]).collect(),
            );
            done = true;
            for i in (0..n).rev() {
                digits[i] += 1;
                if digits[i] < self.cells[i].len() {
                    done = false;
                    break;
                }
                digits[i] = 0;
            }
            Some(board)
        })
    }
}

impl fmt::Display for BoardClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, set) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&letters::render(set))?;
        }
        Ok(())
    }
}

pub fn class_size(class: &BoardClass) -> u128 {
    class.size()
}

pub fn split_cell(class: &BoardClass, cell: usize) -> Result<Vec<BoardClass>> {
    class.split_cell(cell)
}

/// A canonical class with its position in the enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTask {
    pub index: usize,
    pub assignment: Vec<u8>,
    pub class: BoardClass,
}

/// Streams one class per symmetry orbit of bucket assignments.
///
/// Assignments are visited in odometer order over bucket indices and kept
/// when they are the lexicographic minimum of their orbit, so the order and
/// task indices are deterministic.
pub struct ClassEnumerator {
    bucketing: Bucketing,
    group: SymmetryGroup,
    radix: Vec<u8>,
    digits: Vec<u8>,
    next_index: usize,
    done: bool,
}

impl ClassEnumerator {
    pub fn new(bucketing: Bucketing) -> Self {
        let dims = bucketing.dims();
        let radix = (0..dims.cells())
            .map(|c| bucketing.cell(c).len() as u8)
            .collect();
        Self {
            group: SymmetryGroup::new(dims),
            digits: vec![0; dims.cells()],
            radix,
            bucketing,
            next_index: 0,
            done: false,
        }
    }

    fn advance(&mut self) {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radix[i] {
                return;
            }
            self.digits[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for ClassEnumerator {
    type Item = ClassTask;

    fn next(&mut self) -> Option<ClassTask> {
        while !self.done {
            let canonical = self.group.is_canonical(&self.digits);
            let assignment = canonical.then(|| self.digits.clone());
            self.advance();
            if let Some(assignment) = assignment {
                let index = self.next_index;
                self.next_index += 1;
                return Some(ClassTask {
                    index,
                    class: self.bucketing.class_for(&assignment),
                    assignment,
                });
            }
        }
        None
    }
}

pub fn enumerate_classes(bucketing: Bucketing) -> ClassEnumerator {
    ClassEnumerator::new(bucketing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn dims(s: &str) -> Dims {
        s.parse().unwrap()
    }

    fn sym(c: char) -> Letter {
        letters::from_char(c).unwrap()
    }

    #[test]
    fn bucket_constants() {
        let b3 = buckets(3).unwrap();
        assert_eq!(
            letters::render(b3.bucket(b3.bucket_of(sym('h')))),
            "hklrsty"
        );
        let b4 = buckets(4).unwrap();
        assert_eq!(
            letters::render(b4.bucket(b4.bucket_of(sym('q')))),
            "bdfgjqvwxz"
        );
        assert_eq!(letters::render(b4.bucket(b4.bucket_of(sym('t')))), "chkmpt");
        assert_eq!(letters::render(b4.bucket(b4.bucket_of(sym('y')))), "lnrsy");
        assert!(buckets(5).is_err());
        assert!(buckets(0).is_err());
    }

    #[test]
    fn buckets_partition_alphabet() {
        for n in 1..=4 {
            let b = buckets(n).unwrap();
            let mut all: Vec<Letter> = b.iter().flatten().copied().collect();
            all.sort();
            assert_eq!(all, (0..26).collect::<Vec<_>>(), "n={n}");
        }
    }

    #[test]
    fn class_sizes() {
        let t4 = BoardClass::parse("ab gh mn cd ij op ef kl qr", dims("3x3")).unwrap();
        assert_eq!(t4.size(), 512);
        let literal = BoardClass::parse(
            "lnrsy chkmp lnrsy aeiou aeiou aeiou chkmp lnrsy bdfgjqvwxyz",
            dims("3x3"),
        )
        .unwrap();
        assert_eq!(literal.size(), 4_296_875);
        let t6 = BoardClass::parse(
            "lnrsy chkmpt lnrsy aeiou aeiou aeiou chkmpt lnrsy bdfgjvwxz",
            dims("3x3"),
        )
        .unwrap();
        assert_eq!(t6.size(), 5_062_500);
        let parts = t6.split_cell(4).unwrap();
        assert_eq!(parts.len(), 5);
        assert!(parts.iter().all(|p| p.size() == 1_012_500));
        assert_eq!(parts.iter().map(BoardClass::size).sum::<u128>(), t6.size());
        let b = Board::parse("abcdefghi", dims("3x3")).unwrap();
        assert_eq!(BoardClass::singleton(&b).size(), 1);
    }

    #[test]
    fn split_singleton_fails() {
        let c = BoardClass::parse("t ae i r", dims("2x2")).unwrap();
        assert!(matches!(
            c.split_cell(0),
            Err(Error::SplitSingleton { cell: 0 })
        ));
        assert_eq!(c.split_cell(1).unwrap().len(), 2);
    }

    #[test]
    fn class_text_round_trip() {
        let text = "lnrsy chkmp lnrsy aeiou aeiou aeiou chkmp lnrsy bdfgjqvwxyz";
        let c = BoardClass::parse(text, dims("3x3")).unwrap();
        assert_eq!(c.to_string(), text);
        assert!(BoardClass::parse("a b c", dims("2x2")).is_err());
        assert!(BoardClass::parse("a b c 1", dims("2x2")).is_err());
    }

    #[test]
    fn bucket_spec_parsing() {
        assert_eq!("3".parse::<BucketSpec>().unwrap(), BucketSpec::uniform(3));
        assert_eq!(
            "2:3".parse::<BucketSpec>().unwrap(),
            BucketSpec {
                corners: 2,
                other: 3
            }
        );
        assert!("2:7".parse::<BucketSpec>().is_err());
        assert!("x".parse::<BucketSpec>().is_err());
    }

    #[test]
    fn single_bucket_2x2_is_one_class() {
        let b = Bucketing::new(dims("2x2"), BucketSpec::uniform(1)).unwrap();
        let all: Vec<_> = enumerate_classes(b).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].class.size(), 26u128.pow(4));
    }

    #[test]
    fn orbit_coverage() {
        // Every assignment is the image of exactly one emitted class.
        for d in ["2x2", "2x3", "3x3"] {
            let dims = dims(d);
            let bucketing = Bucketing::new(dims, BucketSpec::uniform(2)).unwrap();
            let group = SymmetryGroup::new(dims);
            let mut reached = BTreeSet::new();
            let emitted: Vec<_> = enumerate_classes(bucketing.clone()).collect();
            for task in &emitted {
                let orbit: BTreeSet<Vec<u8>> = group.images(&task.assignment).collect();
                for a in orbit {
                    assert!(reached.insert(a), "{d}: assignment reached twice");
                }
            }
            assert_eq!(reached.len() as u128, bucketing.assignments());
            for (i, t) in emitted.iter().enumerate() {
                assert_eq!(t.index, i);
            }
        }
    }

    #[test]
    fn class_containing_board() {
        let bucketing = Bucketing::new(
            dims("4x4"),
            BucketSpec {
                corners: 2,
                other: 3,
            },
        )
        .unwrap();
        let b = Board::parse("perslatgsineters", dims("4x4")).unwrap();
        let c = bucketing.class_containing(&b);
        assert!(c.contains(&b));
        assert_eq!(c.cell(0).len(), 19);
    }

    #[test]
    fn boards_enumerates_the_product() {
        let c = BoardClass::parse("t ae io r", dims("2x2")).unwrap();
        let boards: Vec<String> = c.boards().map(|b| b.to_string()).collect();
        assert_eq!(boards, ["tair", "taor", "teir", "teor"]);
    }

    proptest! {
        #[test]
        fn membership_and_split_sizes(
            sets in proptest::collection::vec(proptest::collection::btree_set(0u8..26, 1..5), 6),
            picks in proptest::collection::vec(0usize..10, 6),
            cell in 0usize..6,
        ) {
            let cells: Vec<Vec<Letter>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
            let class = BoardClass::new(dims("2x3"), cells.clone()).unwrap();
            let board = Board::from_cells(
                dims("2x3"),
                cells.iter().zip(&picks).map(|(s, &p)| s[p % s.len()]).collect(),
            );
            prop_assert!(class.contains(&board));
            let mut other = board.clone();
            let missing = (0..26).find(|l| !cells[cell].contains(l)).unwrap();
            other.cells_mut()[cell] = missing;
            prop_assert!(!class.contains(&other));
            if cells[cell].len() > 1 {
                let total: u128 = class.split_cell(cell).unwrap().iter().map(|c| c.size()).sum();
                prop_assert_eq!(total, class.size());
            }
        }
    }
}
