//! Partitions, ramification profiles, and the conversion from a critical
//! value's ramification type to the cycle type of its monodromy permutation.
//!
//! A ramification type `κ = (k_1, …, k_m)` lists the multiplicities of the
//! critical points over one critical value; a critical point of multiplicity
//! `k` is locally `z ↦ z^{k+1}` and contributes a `(k+1)`-cycle.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::factorial;

/// A weakly decreasing sequence of positive integers. The empty partition is
/// allowed and stands for an unramified point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts into canonical (weakly decreasing) order; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&k| k == 0) {
            return Err(Error::invalid(format!("partition parts must be positive: {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts, `m(κ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `d(κ)`: the sum of the parts.
    pub fn degeneracy(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `κ! = ∏ k_i!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&k| factorial(k as u64)).product()
    }

    /// Order of the automorphism group of the partition.
    pub fn aut(&self) -> BigInt {
        aut_multiset(&self.0)
    }

    /// Cycle type (a partition of `n`) of the monodromy permutation around a
    /// critical value of this ramification type in a degree-`n` covering.
    pub fn to_cycle_type(&self, n: u32) -> Result<Partition> {
        let used = self.degeneracy() + self.len() as u32;
        if used > n {
            return Err(Error::invalid(format!(
                "ramification type {self} needs {used} sheets but the degree is {n}"
            )));
        }
        let mut parts: Vec<u32> = self.0.iter().map(|k| k + 1).collect();
        parts.extend(std::iter::repeat(1).take((n - used) as usize));
        Ok(Partition(parts))
    }
}

/// Lexicographic on the canonical (decreasing) part list.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub fn degeneracy(kappa: &Partition) -> u32 {
    kappa.degeneracy()
}

pub fn partition_factorial(kappa: &Partition) -> BigInt {
    kappa.factorial()
}

/// `∏ (multiplicity of each distinct value)!`.
pub fn aut_multiset<T: Ord>(xs: &[T]) -> BigInt {
    let mut counts: BTreeMap<&T, u64> = BTreeMap::new();
    for x in xs {
        *counts.entry(x).or_default() += 1;
    }
    counts.values().map(|&c| factorial(c)).product()
}

pub fn to_cycle_type(kappa: &Partition, n: u32) -> Result<Partition> {
    kappa.to_cycle_type(n)
}

/// A covering degree with an ordered list of ramification types over distinct
/// fixed critical values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RamificationProfile {
    n: u32,
    types: Vec<Partition>,
}

impl RamificationProfile {
    /// Full validation, including the genus-zero constraint `Σ d(κ_i) = 2n − 2`.
    pub fn new(n: u32, types: Vec<Partition>) -> Result<Self> {
        let profile = Self::relaxed(n, types)?;
        if !profile.is_balanced() {
            return Err(Error::invalid(format!(
                "total degeneracy of {profile} is {}, expected 2n-2 = {}",
                profile.total_degeneracy(),
                2 * n - 2
            )));
        }
        Ok(profile)
    }

    /// Validates everything except total degeneracy. Such a profile names no
    /// genus-zero stratum; the oracle counts zero coverings for it.
    pub fn relaxed(n: u32, types: Vec<Partition>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("covering degree must be positive"));
        }
        if types.is_empty() {
            return Err(Error::invalid("a profile needs at least one critical value"));
        }
        for kappa in &types {
            if kappa.degeneracy() == 0 {
                return Err(Error::invalid("listed ramification types must have d >= 1"));
            }
            kappa.to_cycle_type(n)?;
        }
        Ok(RamificationProfile { n, types })
    }

    /// Parses `"2;2;1;1"` (types separated by `;`, parts by `,`).
    pub fn parse(n: u32, s: &str) -> Result<Self> {
        Self::new(n, parse_types(s)?)
    }

    /// Degree `n` with one point of type `κ` and all remaining critical values simple.
    pub fn single(n: u32, kappa: Partition) -> Result<Self> {
        let d = kappa.degeneracy();
        if d > 2 * n - 2 {
            return Err(Error::invalid(format!("{kappa} is too degenerate for degree {n}")));
        }
        let simple = Partition(vec![1]);
        let mut types = vec![kappa];
        types.extend(std::iter::repeat(simple).take((2 * n - 2 - d) as usize));
        Self::new(n, types)
    }

    /// All critical values simple.
    pub fn all_simple(n: u32) -> Result<Self> {
        Self::single(n, Partition(vec![1]))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn types(&self) -> &[Partition] {
        &self.types
    }

    /// Number of critical values `c`.
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn degeneracies(&self) -> Vec<u32> {
        self.types.iter().map(Partition::degeneracy).collect()
    }

    pub fn total_degeneracy(&self) -> u32 {
        self.degeneracies().iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.n >= 1 && self.total_degeneracy() == 2 * self.n - 2
    }

    pub fn cycle_types(&self) -> Vec<Partition> {
        self.types
            .iter()
            .map(|k| k.to_cycle_type(self.n).expect("validated at construction"))
            .collect()
    }

    /// `|Aut{κ_1, …, κ_c}|`.
    pub fn aut_types(&self) -> BigInt {
        aut_multiset(&self.types)
    }

    /// `|Aut{d_1, …, d_c}|`.
    pub fn aut_degeneracies(&self) -> BigInt {
        aut_multiset(&self.degeneracies())
    }

    /// Dimension of the projectivized stratum, `c − 1`: one coordinate per
    /// critical value, minus one for scaling.
    pub fn stratum_dimension(&self) -> usize {
        self.types.len() - 1
    }

    /// Types sorted into decreasing order; equal for profiles that differ only
    /// by the order of their critical values.
    pub fn sorted_types(&self) -> Vec<Partition> {
        let mut types = self.types.clone();
        types.sort_by(|a, b| b.cmp(a));
        types
    }

    /// `"n|κ_1;…;κ_c"` with the types in canonical order.
    pub fn canonical_key(&self) -> String {
        format!("{}|{}", self.n, join_types(&self.sorted_types()))
    }
}

impl fmt::Display for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_types(&self.types))
    }
}

fn join_types(types: &[Partition]) -> String {
    types.iter().map(Partition::to_string).collect::<Vec<_>>().join(";")
}

/// Parses the `;`-separated type list of a profile.
pub fn parse_types(s: &str) -> Result<Vec<Partition>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty profile".into()));
    }
    s.split(';').map(Partition::from_str).collect()
}

pub fn stratum_dimension(profile: &RamificationProfile) -> usize {
    profile.stratum_dimension()
}

/// All partitions of `d`, in decreasing lexicographic order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}
