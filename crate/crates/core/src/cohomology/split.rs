use std::fmt;

use crate::error::{Error, Result};

/// Largest number of marks a split can carry.
pub const MAX_MARKS: u32 = 24;

/// An unordered partition `A ⊔ B` of the marks `{1..n}` into two nonempty
/// blocks, stored as a bit mask of the block containing mark 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkSplit {
    n: u32,
    mask: u32,
}

fn full(n: u32) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl MarkSplit {
    /// Builds a split from one of its blocks, given as 1-based marks.
    pub fn new(n: u32, block: &[u32]) -> Result<Self> {
        if !(2..=MAX_MARKS).contains(&n) {
            return Err(Error::invalid(format!("mark count {n} outside 2..={MAX_MARKS}")));
        }
        let mut mask = 0u32;
        for &m in block {
            if m == 0 || m > n {
                return Err(Error::invalid(format!("mark {m} outside 1..={n}")));
            }
            if mask & (1 << (m - 1)) != 0 {
                return Err(Error::invalid(format!("mark {m} repeated")));
            }
            mask |= 1 << (m - 1);
        }
        Self::from_mask(n, mask)
    }

    /// From a bit mask of either block (bit `i` = mark `i + 1`).
    pub fn from_mask(n: u32, mask: u32) -> Result<Self> {
        let all = full(n);
        if mask & !all != 0 || mask == 0 || mask == all {
            return Err(Error::invalid(format!("mask {mask:#b} is not a proper split of {n} marks")));
        }
        let mask = if mask & 1 == 1 { mask } else { all & !mask };
        Ok(MarkSplit { n, mask })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Mask of the block containing mark 1.
    pub fn mask(&self) -> u32 {
        self.mask
    }

    fn marks(mask: u32, n: u32) -> Vec<u32> {
        (1..=n).filter(|m| mask & (1 << (m - 1)) != 0).collect()
    }

    /// The block containing mark 1.
    pub fn block_a(&self) -> Vec<u32> {
        Self::marks(self.mask, self.n)
    }

    pub fn block_b(&self) -> Vec<u32> {
        Self::marks(full(self.n) & !self.mask, self.n)
    }

    pub fn sizes(&self) -> (u32, u32) {
        let a = self.mask.count_ones();
        (a, self.n - a)
    }

    /// Both blocks have at least two marks: a boundary divisor of the moduli space.
    pub fn is_boundary(&self) -> bool {
        let (a, b) = self.sizes();
        a >= 2 && b >= 2
    }

    /// The lone mark, when one block is a singleton.
    pub fn singleton(&self) -> Option<u32> {
        match self.sizes() {
            (1, _) => Some(1),
            (_, 1) => Some((full(self.n) & !self.mask).trailing_zeros() + 1),
            _ => None,
        }
    }

    fn side(&self, mark: u32) -> bool {
        self.mask & (1 << (mark - 1)) != 0
    }

    /// `i` on one side, `j` and `k` together on the other.
    pub fn separates(&self, i: u32, j: u32, k: u32) -> bool {
        self.side(j) == self.side(k) && self.side(i) != self.side(j)
    }

    /// `{i, j}` on one side, `{k, l}` on the other.
    pub fn separates_pairs(&self, i: u32, j: u32, k: u32, l: u32) -> bool {
        self.side(i) == self.side(j) && self.side(k) == self.side(l) && self.side(i) != self.side(k)
    }

    /// Two splits are compatible when some block of one contains a block of the
    /// other (equivalently, `{1..n} = A ⊔ B ⊔ C` with the splits `(A∪B)|C`
    /// and `A|(B∪C)`). Distinct incompatible boundary divisors do not meet.
    pub fn compatible(&self, other: &MarkSplit) -> bool {
        assert_eq!(self.n, other.n, "splits of different mark sets");
        let all = full(self.n);
        let (a1, b1) = (self.mask, all & !self.mask);
        let (a2, b2) = (other.mask, all & !other.mask);
        a1 & a2 == 0 || a1 & b2 == 0 || b1 & a2 == 0 || b1 & b2 == 0
    }

    /// Every split of `{1..n}`, singletons included, in mask order.
    pub fn all(n: u32) -> impl Iterator<Item = MarkSplit> {
        let all = full(n);
        // masks containing mark 1, excluding the full set
        (0..(1u32 << (n - 1)))
            .map(move |rest| (rest << 1) | 1)
            .filter(move |&m| m != all)
            .map(move |mask| MarkSplit { n, mask })
    }

    /// Splits with both blocks of size at least two.
    pub fn boundary(n: u32) -> impl Iterator<Item = MarkSplit> {
        Self::all(n).filter(MarkSplit::is_boundary)
    }
}

impl fmt::Display for MarkSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Vec<u32>| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}}|{{{}}}", show(self.block_a()), show(self.block_b()))
    }
}
