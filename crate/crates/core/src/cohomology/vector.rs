use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::split::MarkSplit;
use crate::error::{Error, Result};
use crate::exact::{self, Q};

/// A formal ℚ-combination of the boundary divisors `[D]` (both blocks of size
/// at least two) and `Ψ`: a representative of a class in `H²(ℙℋ_n)`.
///
/// Splits with a singleton block never appear here; [`super::boundary_class`]
/// rewrites them as `Ψ − ψ_i` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Vector {
    n: u32,
    psi: Q,
    splits: BTreeMap<MarkSplit, Q>,
}

impl H2Vector {
    pub fn zero(n: u32) -> Self {
        H2Vector {
            n,
            psi: Q::zero(),
            splits: BTreeMap::new(),
        }
    }

    /// `Ψ`.
    pub fn psi(n: u32) -> Self {
        let mut v = Self::zero(n);
        v.psi = Q::from_integer(1.into());
        v
    }

    /// The basis vector `[D]`; `D` must have both blocks of size at least two.
    pub fn split(d: MarkSplit) -> Result<Self> {
        if !d.is_boundary() {
            return Err(Error::invalid(format!("{d} has a singleton block; not a basis split")));
        }
        let mut v = Self::zero(d.n());
        v.splits.insert(d, Q::from_integer(1.into()));
        Ok(v)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn psi_coeff(&self) -> &Q {
        &self.psi
    }

    pub fn coeff(&self, d: &MarkSplit) -> Q {
        self.splits.get(d).cloned().unwrap_or_else(Q::zero)
    }

    /// Nonzero split coefficients in split order.
    pub fn splits(&self) -> impl Iterator<Item = (&MarkSplit, &Q)> {
        self.splits.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.psi.is_zero() && self.splits.is_empty()
    }

    pub fn add_psi(&mut self, c: &Q) {
        self.psi += c;
    }

    pub fn add_split(&mut self, d: MarkSplit, c: &Q) {
        assert!(d.is_boundary(), "singleton splits must be expanded first");
        assert_eq!(d.n(), self.n, "split of a different mark set");
        let entry = self.splits.entry(d).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.splits.remove(&d);
        }
    }

    pub fn add_scaled(&mut self, other: &H2Vector, c: &Q) {
        assert_eq!(self.n, other.n, "vectors over different mark sets");
        self.psi += &other.psi * c;
        for (d, x) in &other.splits {
            self.add_split(*d, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Q) -> H2Vector {
        let mut out = H2Vector::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    /// Coordinates over `basis`, with `Ψ` last.
    pub fn to_dense(&self, basis: &Basis) -> Vec<Q> {
        assert_eq!(self.n, basis.n, "basis of a different mark set");
        let mut v = vec![Q::zero(); basis.len() + 1];
        for (d, x) in &self.splits {
            v[basis.index(d)] = x.clone();
        }
        v[basis.len()] = self.psi.clone();
        v
    }
}

impl Add for &H2Vector {
    type Output = H2Vector;
    fn add(self, rhs: &H2Vector) -> H2Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::from_integer(1.into()));
        out
    }
}

impl Sub for &H2Vector {
    type Output = H2Vector;
    fn sub(self, rhs: &H2Vector) -> H2Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::from_integer((-1).into()));
        out
    }
}

impl Neg for &H2Vector {
    type Output = H2Vector;
    fn neg(self) -> H2Vector {
        self.scaled(&Q::from_integer((-1).into()))
    }
}

impl Mul<&Q> for &H2Vector {
    type Output = H2Vector;
    fn mul(self, c: &Q) -> H2Vector {
        self.scaled(c)
    }
}

/// The boundary splits of `{1..n}` in a fixed order, indexing dense coordinates.
#[derive(Clone, Debug)]
pub struct Basis {
    n: u32,
    splits: Vec<MarkSplit>,
    index: BTreeMap<MarkSplit, usize>,
}

impl Basis {
    pub fn new(n: u32) -> Self {
        let splits: Vec<MarkSplit> = MarkSplit::boundary(n).collect();
        let index = splits.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        Basis { n, splits, index }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of boundary splits (the `Ψ` coordinate is extra).
    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn splits(&self) -> &[MarkSplit] {
        &self.splits
    }

    pub fn index(&self, d: &MarkSplit) -> usize {
        self.index[d]
    }
}

#[derive(Serialize, Deserialize)]
struct SplitTerm {
    #[serde(rename = "blockA")]
    block_a: Vec<u32>,
    #[serde(with = "exact::serde_q")]
    coeff: Q,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    n: u32,
    #[serde(with = "exact::serde_q")]
    psi: Q,
    splits: Vec<SplitTerm>,
}

impl Serialize for H2Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            n: self.n,
            psi: self.psi.clone(),
            splits: self
                .splits
                .iter()
                .map(|(d, c)| SplitTerm {
                    block_a: d.block_a(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for H2Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = Wire::deserialize(d)?;
        let mut v = H2Vector::zero(wire.n);
        v.psi = wire.psi;
        for t in wire.splits {
            let split = MarkSplit::new(wire.n, &t.block_a).map_err(D::Error::custom)?;
            if !split.is_boundary() {
                return Err(D::Error::custom(format!("{split} is not a basis split")));
            }
            v.add_split(split, &t.coeff);
        }
        Ok(v)
    }
}
