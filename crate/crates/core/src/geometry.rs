//! Board dimensions, boards, king-move adjacency, symmetries and the canonical
//! cell order used by orderly trees.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::letters::{self, Letter};

/// Board dimensions, normalized so that `rows <= cols`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dims {
    rows: usize,
    cols: usize,
}

impl Dims {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows < 2 || cols < 2 || rows * cols > 64 {
            return Err(Error::Dims(format!("{rows}x{cols}")));
        }
        Ok(Self {
            rows: rows.min(cols),
            cols: rows.max(cols),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn is_corner(&self, cell: usize) -> bool {
        let (r, c) = (cell / self.cols, cell % self.cols);
        (r == 0 || r == self.rows - 1) && (c == 0 || c == self.cols - 1)
    }
}

impl FromStr for Dims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Dims(s.to_string());
        let (r, c) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        let rows = r.parse().map_err(|_| bad())?;
        let cols = c.parse().map_err(|_| bad())?;
        Dims::new(rows, cols)
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A board: one symbol per cell in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Board {
    dims: Dims,
    cells: Vec<Letter>,
}

impl Board {
    pub fn parse(text: &str, dims: Dims) -> Result<Self> {
        let text_lower = text.trim().to_ascii_lowercase();
        let chars: Vec<char> = text_lower.chars().collect();
        if let Some((pos, c)) = chars
            .iter()
            .enumerate()
            .find(|(_, c)| letters::from_char(**c).is_none())
        {
            return Err(Error::Board {
                text: text.to_string(),
                position: pos,
                reason: format!("{c:?} is not a letter"),
            });
        }
        if chars.len() != dims.cells() {
            return Err(Error::Board {
                text: text.to_string(),
                position: chars.len().min(dims.cells()),
                reason: format!(
                    "expected {} cells for {dims}, got {}",
                    dims.cells(),
                    chars.len()
                ),
            });
        }
        let cells = chars.into_iter().filter_map(letters::from_char).collect();
        Ok(Self { dims, cells })
    }

    pub fn from_cells(dims: Dims, cells: Vec<Letter>) -> Self {
        assert_eq!(cells.len(), dims.cells(), "cell count mismatch for {dims}");
        debug_assert!(cells.iter().all(|&l| (l as usize) < letters::ALPHABET_SIZE));
        Self { dims, cells }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn cells(&self) -> &[Letter] {
        &self.cells
    }

    pub fn cells_mut(&mut self) -> &mut [Letter] {
        &mut self.cells
    }

    #[inline]
    pub fn get(&self, cell: usize) -> Letter {
        self.cells[cell]
    }

    pub fn has_repeats(&self) -> bool {
        let mut seen = 0u32;
        for &l in &self.cells {
            if seen & (1 << l) != 0 {
                return true;
            }
            seen |= 1 << l;
        }
        false
    }

    /// The lexicographically smallest image of this board under the symmetry
    /// group of its dimensions.
    pub fn canonicalize(&self) -> Board {
        let group = SymmetryGroup::new(self.dims);
        Board {
            dims: self.dims,
            cells: group.canonical(&self.cells),
        }
    }

    pub fn is_canonical(&self) -> bool {
        SymmetryGroup::new(self.dims).is_canonical(&self.cells)
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&letters::render(&self.cells))
    }
}

/// King-move neighbors of every cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    neighbors: Vec<Vec<usize>>,
}

impl Adjacency {
    pub fn new(dims: Dims) -> Self {
        let (rows, cols) = (dims.rows() as isize, dims.cols() as isize);
        let mut neighbors = Vec::with_capacity(dims.cells());
        for r in 0..rows {
            for c in 0..cols {
                let mut n = Vec::with_capacity(8);
                for dr in -1..=1 {
                    for dc in -1..=1 {
                        let (nr, nc) = (r + dr, c + dc);
                        if (dr, dc) != (0, 0) && (0..rows).contains(&nr) && (0..cols).contains(&nc)
                        {
                            n.push((nr * cols + nc) as usize);
                        }
                    }
                }
                neighbors.push(n);
            }
        }
        Self { neighbors }
    }

    #[inline]
    pub fn of(&self, cell: usize) -> &[usize] {
        &self.neighbors[cell]
    }

    pub fn degree(&self, cell: usize) -> usize {
        self.neighbors[cell].len()
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].contains(&b)
    }
}

pub fn neighbors(dims: Dims) -> Adjacency {
    Adjacency::new(dims)
}

/// Cell permutations preserving the grid: 8 for square boards, 4 otherwise.
///
/// Each permutation `p` maps a cell vector `v` to the image `w[i] = v[p[i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    perms: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    pub fn new(dims: Dims) -> Self {
        let (m, n) = (dims.rows(), dims.cols());
        type Map = fn(usize, usize, usize, usize) -> (usize, usize);
        let mut maps: Vec<Map> = vec![
            |r, c, _, _| (r, c),
            |r, c, m, n| (m - 1 - r, n - 1 - c),
            |r, c, _, n| (r, n - 1 - c),
            |r, c, m, _| (m - 1 - r, c),
        ];
        if dims.is_square() {
            maps.extend([
                (|r, c, _, _| (c, r)) as Map,
                |r, c, m, _| (m - 1 - c, m - 1 - r),
                |r, c, m, _| (c, m - 1 - r),
                |r, c, m, _| (m - 1 - c, r),
            ]);
        }
        let perms = maps
            .into_iter()
            .map(|f| {
                (0..m * n)
                    .map(|i| {
                        let (r, c) = f(i / n, i % n, m, n);
                        r * n + c
                    })
                    .collect()
            })
            .collect();
        Self { perms }
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn apply<T: Clone>(&self, perm: usize, cells: &[T]) -> Vec<T> {
        self.perms[perm].iter().map(|&j| cells[j].clone()).collect()
    }

    pub fn images<'a, T: Clone>(&'a self, cells: &'a [T]) -> impl Iterator<Item = Vec<T>> + 'a {
        (0..self.perms.len()).map(move |p| self.apply(p, cells))
    }

    pub fn canonical<T: Clone + Ord>(&self, cells: &[T]) -> Vec<T> {
        self.images(cells)
            .min()
            .expect("group contains the identity")
    }

    /// True if no image is lexicographically smaller than `cells`.
    pub fn is_canonical<T: Ord>(&self, cells: &[T]) -> bool {
        self.perms.iter().skip(1).all(|p| {
            for (i, &j) in p.iter().enumerate() {
                match cells[j].cmp(&cells[i]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => return true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            true
        })
    }
}

/// Table of ranks used to sort word paths: cells with a higher rank come first
/// in a path, so they sit at the top of an orderly tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellOrder {
    rank: Vec<usize>,
    sequence: Vec<usize>,
}

const ORDER_4X4: [usize; 16] = [3, 7, 5, 2, 11, 15, 13, 10, 9, 14, 12, 8, 1, 6, 4, 0];

impl CellOrder {
    pub fn new(dims: Dims) -> Self {
        if dims.rows() == 4 && dims.cols() == 4 {
            return Self::from_ranks(ORDER_4X4.to_vec());
        }
        // Descending degree; among equal degrees lower indices rank higher.
        let adj = Adjacency::new(dims);
        let mut cells: Vec<usize> = (0..dims.cells()).collect();
        cells.sort_by_key(|&c| (std::cmp::Reverse(adj.degree(c)), c));
        let mut rank = vec![0; dims.cells()];
        let top = dims.cells() - 1;
        for (i, &c) in cells.iter().enumerate() {
            rank[c] = top - i;
        }
        Self::from_ranks(rank)
    }

    /// `rank` must be a permutation of `0..rank.len()`.
    pub fn from_ranks(rank: Vec<usize>) -> Self {
        let mut sequence: Vec<usize> = (0..rank.len()).collect();
        sequence.sort_by_key(|&c| std::cmp::Reverse(rank[c]));
        Self { rank, sequence }
    }

    /// Rank of a cell (the ORDER array).
    #[inline]
    pub fn rank(&self, cell: usize) -> usize {
        self.rank[cell]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Cells from highest to lowest rank.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

pub fn cell_order(dims: Dims) -> CellOrder {
    CellOrder::new(dims)
}
