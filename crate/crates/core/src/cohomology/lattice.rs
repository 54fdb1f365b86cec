use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::split::MarkSplit;
use super::vector::{Basis, H2Vector};
use crate::error::{Error, Result};
use crate::exact::Q;
use crate::linalg::Echelon;

/// The linear relations among boundary divisors: for every 4-subset
/// `{i,j,k,l}`, `[ijDkl] − [ikDjl]` and `[ikDjl] − [ilDjk]`, where `[ijDkl]`
/// sums the divisors with `i, j` on one side and `k, l` on the other.
#[derive(Debug)]
pub struct RelationLattice {
    n: u32,
    basis: Basis,
    rows: Vec<H2Vector>,
    echelon: Echelon,
}

/// `[ijDkl]` over boundary splits.
pub fn pair_sum(n: u32, i: u32, j: u32, k: u32, l: u32) -> H2Vector {
    let mut v = H2Vector::zero(n);
    let one = Q::from_integer(1.into());
    for d in MarkSplit::boundary(n).filter(|d| d.separates_pairs(i, j, k, l)) {
        v.add_split(d, &one);
    }
    v
}

impl RelationLattice {
    fn build(n: u32) -> Self {
        let basis = Basis::new(n);
        let mut rows = Vec::new();
        if n >= 4 {
            for i in 1..=n {
                for j in i + 1..=n {
                    for k in j + 1..=n {
                        for l in k + 1..=n {
                            let ij = pair_sum(n, i, j, k, l);
                            let ik = pair_sum(n, i, k, j, l);
                            let il = pair_sum(n, i, l, j, k);
                            rows.push(&ij - &ik);
                            rows.push(&ik - &il);
                        }
                    }
                }
            }
        }
        let dense: Vec<Vec<Q>> = rows.iter().map(|r| r.to_dense(&basis)).collect();
        let echelon = Echelon::from_rows(basis.len() + 1, &dense);
        RelationLattice {
            n,
            basis,
            rows,
            echelon,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn rows(&self) -> &[H2Vector] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Dimension of the span of the boundary divisors modulo the relations,
    /// i.e. of `H²` of the moduli space of `n`-pointed genus-zero curves.
    pub fn quotient_rank(&self) -> usize {
        self.basis.len() - self.rank()
    }

    /// Whether `v` is a combination of relation rows (hence zero in cohomology).
    pub fn contains(&self, v: &H2Vector) -> bool {
        assert_eq!(v.n(), self.n, "vector over a different mark set");
        self.echelon.contains(&v.to_dense(&self.basis))
    }

    /// Rank of the span of `vs` modulo the relations.
    pub fn rank_modulo(&self, vs: &[H2Vector]) -> usize {
        let mut e = self.echelon.clone();
        vs.iter().filter(|v| e.insert(&v.to_dense(&self.basis))).count()
    }
}

/// The lattice for `n` marks, built once and shared.
pub fn relation_lattice(n: u32) -> Arc<RelationLattice> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<OnceLock<Arc<RelationLattice>>>>>> = OnceLock::new();
    let slot = {
        let mut map = CACHE.get_or_init(Default::default).lock().expect("lattice cache poisoned");
        map.entry(n).or_default().clone()
    };
    slot.get_or_init(|| Arc::new(RelationLattice::build(n))).clone()
}

/// `u = v` in `H²(ℙℋ_n)`: the difference lies in the relation span.
pub fn classes_equal(u: &H2Vector, v: &H2Vector, lattice: &RelationLattice) -> Result<bool> {
    if u.n() != v.n() || u.n() != lattice.n() {
        return Err(Error::invalid(format!(
            "mark counts differ: {} vs {} (lattice {})",
            u.n(),
            v.n(),
            lattice.n()
        )));
    }
    Ok(lattice.contains(&(u - v)))
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSummary {
    pub n: u32,
    pub boundary_splits: usize,
    pub relation_rows: usize,
    pub rank: usize,
    pub quotient_rank: usize,
}

impl From<&RelationLattice> for LatticeSummary {
    fn from(l: &RelationLattice) -> Self {
        LatticeSummary {
            n: l.n,
            boundary_splits: l.basis.len(),
            relation_rows: l.rows.len(),
            rank: l.rank(),
            quotient_rank: l.quotient_rank(),
        }
    }
}
