//! Intersection numbers of the test curves `σ_{p,q} ≅ ℙ¹ ⊂ ℙℋ_n` with the
//! symmetric classes `Ψ` and `Δ_{p',q'}`.
//!
//! Summed over the special points of the family, `σ_{p,q}` meets
//!
//! | class              | index     |
//! |--------------------|-----------|
//! | `Δ_{1,n−1}`, `Δ_{n−1,1}` | `pq(n−2)` each |
//! | `Δ_{2,n−2}`, `Δ_{n−2,2}` | `pq` each |
//! | `Δ_{p,q}`, `Δ_{q,p}`     | `2` each |
//! | `Ψ`                | `pq`      |
//!
//! and no other `Δ_{p',q'}`. Whenever two listed ordered pairs coincide their
//! entries add up.

use serde::{Deserialize, Serialize};

use super::classes::{delta_pq, SymmetricClass};
use super::lattice::relation_lattice;
use super::vector::{Basis, H2Vector};
use crate::error::{Error, Result};
use crate::exact::{self, q, Q};
use crate::linalg::{self, Echelon};

fn check_pq(p: u32, qq: u32) -> Result<u32> {
    if p == 0 || qq == 0 || p + qq < 3 {
        return Err(Error::invalid(format!("σ_{{p,q}} needs p, q >= 1 and p + q >= 3, got ({p}, {qq})")));
    }
    Ok(p + qq)
}

/// `σ_{p,q} ∩ Δ_{a, n−a}`.
fn delta_entry(p: u32, qq: u32, a: u32) -> Q {
    let n = p + qq;
    let (pq, nn) = ((p * qq) as i64, n as i64);
    let listed = [
        (1, pq * (nn - 2)),
        (n - 1, pq * (nn - 2)),
        (2, pq),
        (n - 2, pq),
        (p, 2),
        (qq, 2),
    ];
    q(listed.iter().filter(|(b, _)| *b == a).map(|(_, v)| v).sum())
}

/// Pairing of `σ_{p,q}` with a symbolic combination of `Ψ` and the `Δ`s.
pub fn sigma_pairing_symmetric(p: u32, qq: u32, v: &SymmetricClass) -> Result<Q> {
    let n = check_pq(p, qq)?;
    if v.n != n {
        return Err(Error::invalid(format!("class lives on n = {}, σ_{{{p},{qq}}} on n = {n}", v.n)));
    }
    let mut total = &v.psi * q((p * qq) as i64);
    for (a, x) in &v.delta {
        total += x * delta_entry(p, qq, *a);
    }
    Ok(total)
}

/// Writes `v` exactly as `a Ψ + Σ_k b_k Δ_{k, n−k}` (k ≤ n/2) in the free
/// space of [`H2Vector`]s, without using any relation. `None` if `v` is not
/// of that form: the tables fix pairings only on this span.
pub fn decompose_symmetric(v: &H2Vector) -> Result<Option<SymmetricClass>> {
    let n = v.n();
    let basis = Basis::new(n);
    let mut generators = vec![H2Vector::psi(n).to_dense(&basis)];
    for k in 1..=n / 2 {
        generators.push(delta_pq(n, k, n - k)?.to_dense(&basis));
    }
    let Some(x) = linalg::solve(&generators, &v.to_dense(&basis)) else {
        return Ok(None);
    };
    let mut c = SymmetricClass::zero(n);
    c.psi = x[0].clone();
    for (k, coeff) in (1..=n / 2).zip(&x[1..]) {
        c.add_delta(k, coeff);
    }
    Ok(Some(c))
}

/// `σ_{p,q} ∩ v` for `v` in the span of `Ψ` and the `Δ_{p',q'}`.
pub fn sigma_pairing(p: u32, qq: u32, v: &H2Vector) -> Result<Q> {
    let n = check_pq(p, qq)?;
    if v.n() != n {
        return Err(Error::invalid(format!("class lives on n = {}, σ_{{{p},{qq}}} on n = {n}", v.n())));
    }
    match decompose_symmetric(v)? {
        Some(c) => sigma_pairing_symmetric(p, qq, &c),
        None => Err(Error::refused(
            "class is not a combination of Ψ and the Δ_{p,q}; the σ tables do not determine its pairing",
        )),
    }
}

/// Pairings of every `σ_{p,n−p}` with `Δ_{k,n−k}`, `1 ≤ k ≤ n/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingMatrix {
    pub n: u32,
    /// Row labels `p` of `σ_{p,n−p}`.
    pub rows: Vec<u32>,
    /// Column labels `k` of `Δ_{k,n−k}`.
    pub columns: Vec<u32>,
    #[serde(with = "matrix_serde")]
    pub entries: Vec<Vec<Q>>,
    /// Rank of `entries`.
    pub rank: usize,
    /// Rank of the `Δ_{k,n−k}` modulo the four-point relations.
    pub delta_rank_in_cohomology: usize,
}

impl PairingMatrix {
    /// The σ families separate the `Δ` classes.
    pub fn full_column_rank(&self) -> bool {
        self.rank == self.columns.len()
    }
}

pub fn pairing_matrix(n: u32) -> Result<PairingMatrix> {
    if n < 3 {
        return Err(Error::invalid("σ families need n >= 3"));
    }
    let rows: Vec<u32> = (1..n).collect();
    let columns: Vec<u32> = (1..=n / 2).collect();
    let entries: Vec<Vec<Q>> = rows
        .iter()
        .map(|&p| {
            columns
                .iter()
                .map(|&k| sigma_pairing_symmetric(p, n - p, &SymmetricClass::delta_pq(n, k)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rank = Echelon::from_rows(columns.len(), &entries).rank();
    let lattice = relation_lattice(n);
    let deltas = columns
        .iter()
        .map(|&k| delta_pq(n, k, n - k))
        .collect::<Result<Vec<_>>>()?;
    let delta_rank_in_cohomology = lattice.rank_modulo(&deltas);
    Ok(PairingMatrix {
        n,
        rows,
        columns,
        entries,
        rank,
        delta_rank_in_cohomology,
    })
}

/// One claimed σ-pairing, recomputed from the tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaClaim {
    pub claim: String,
    #[serde(with = "exact::serde_q")]
    pub expected: Q,
    #[serde(with = "exact::serde_q")]
    pub actual: Q,
    pub passed: bool,
}

/// Pairings of `σ_{p,q}` with `Ψ`, `Δ_n`, and with `C_n`, `M_n` in both their
/// `Ψ`/`Δ_n` form and their `Σ Δ_{p',q'}` form, against the closed totals.
pub fn sigma_claims(p: u32, qq: u32) -> Result<Vec<SigmaClaim>> {
    let n = check_pq(p, qq)?;
    let (pq, n_) = ((p * qq) as i64, n as i64);
    let delta_sum = |f: &dyn Fn(i64) -> Q| {
        let mut c = SymmetricClass::zero(n);
        for a in 1..n {
            c.add_delta(a, &f((a * (n - a)) as i64));
        }
        c
    };
    let caustic_total = q(3 * pq * (n_ - 1) - 6);
    let maxwell_total = q(2 * pq * (n_ - 1) * (n_ - 6) + 4 * (pq * (n_ - 1) + 2));
    let cases = [
        ("σ·Ψ = pq", SymmetricClass::psi(n), q(pq)),
        ("σ·Δ = pq(n−1)+2", SymmetricClass::delta_total(n), q(pq * (n_ - 1) + 2)),
        ("σ·C = 3pq(n−1)−6, C = 6(n−1)Ψ−3Δ", SymmetricClass::caustic(n)?, caustic_total.clone()),
        (
            "σ·C = 3pq(n−1)−6, C = 3Σ(pq/n−1/2)Δ_{p,q}",
            delta_sum(&|ab| q(3) * (exact::frac(ab, n_) - exact::frac(1, 2))),
            caustic_total,
        ),
        ("σ·M, M = 2(n−1)(n−6)Ψ+4Δ", SymmetricClass::maxwell(n)?, maxwell_total.clone()),
        (
            "σ·M, M = Σ((n−6)pq/n+2)Δ_{p,q}",
            delta_sum(&|ab| exact::frac((n_ - 6) * ab, n_) + q(2)),
            maxwell_total,
        ),
    ];
    cases
        .into_iter()
        .map(|(claim, class, expected)| {
            let actual = sigma_pairing_symmetric(p, qq, &class)?;
            Ok(SigmaClaim {
                claim: claim.into(),
                passed: actual == expected,
                expected,
                actual,
            })
        })
        .collect()
}

mod matrix_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(exact::to_string).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Q>>, D::Error> {
        use serde::de::Error as _;
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| r.iter().map(|x| exact::parse(x).map_err(D::Error::custom)).collect())
            .collect()
    }
}
