//! Multiplicity bookkeeping for the discriminant along a σ-family.
//!
//! For `f_{u,v}(z) = Σ_i 1/(uz − a_i) + Σ_j 1/(vz − b_j)` the discriminant in
//! `z` of the numerator of `f′` is a binary form `H(u, v)` of degree
//! `2n(2n−3)`. It vanishes to order `4p²−6p+3` at `u = 0`, to order
//! `4q²−6q+3` at `v = 0`, to order exactly 2 at each `u/v = a_i/b_j`, and has
//! `6(pq−1)` further simple zeros.

use serde::{Deserialize, Serialize};

use super::poly::{qpoly, Poly};
use super::resultant::discriminant_z;
use crate::error::{Error, Result};
use crate::exact::{self, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub total_degree: i64,
    pub ratio_points: i64,
    pub u_zero: i64,
    pub v_zero: i64,
    pub residual: i64,
}

/// The claimed multiplicities for `(p, q)`.
pub fn expected_ledger(p: i64, q: i64) -> Ledger {
    let n = p + q;
    Ledger {
        total_degree: 2 * n * (2 * n - 3),
        ratio_points: p * q,
        u_zero: 4 * p * p - 6 * p + 3,
        v_zero: 4 * q * q - 6 * q + 3,
        residual: 6 * (p * q - 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityPoint {
    /// `"u=0"`, `"v=0"` or `"t=<rational>"` with `t = u/v`.
    pub root: String,
    pub expected: u32,
    pub multiplicity: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub p: u32,
    pub q: u32,
    #[serde(with = "exact::serde_q_vec")]
    pub a: Vec<Q>,
    #[serde(with = "exact::serde_q_vec")]
    pub b: Vec<Q>,
    pub total_degree: u32,
    pub expected_total_degree: u32,
    /// Both specializations `v = 1` and `u = 1` give the same total degree.
    pub degree_certified: bool,
    pub points: Vec<MultiplicityPoint>,
    pub residual_simple_count: u32,
    pub expected_residual: u32,
    pub residual_squarefree: bool,
    pub passed: bool,
}

impl MultiplicityProfile {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.degree_certified {
            out.push("total degree differs between the two specializations".into());
        }
        if self.total_degree != self.expected_total_degree {
            out.push(format!(
                "total degree {} (expected {})",
                self.total_degree, self.expected_total_degree
            ));
        }
        for pt in self.points.iter().filter(|pt| !pt.ok) {
            out.push(format!(
                "multiplicity {} at {} (expected {})",
                pt.multiplicity, pt.root, pt.expected
            ));
        }
        if self.residual_simple_count != self.expected_residual {
            out.push(format!(
                "{} residual zeros (expected {})",
                self.residual_simple_count, self.expected_residual
            ));
        }
        if !self.residual_squarefree {
            out.push("residual zeros are not simple".into());
        }
        out
    }
}

/// `p` small primes for `a` and the next `q` for `b`: all ratios distinct.
pub fn default_generic(p: u32, q_: u32) -> (Vec<Q>, Vec<Q>) {
    let mut primes = Vec::new();
    let mut k = 2i64;
    while primes.len() < (p + q_) as usize {
        if (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0) {
            primes.push(q(k));
        }
        k += 1;
    }
    let b = primes.split_off(p as usize);
    (primes, b)
}

fn check_generic(p: u32, q_: u32, a: &[Q], b: &[Q]) -> Result<()> {
    if p == 0 || q_ == 0 || p + q_ < 3 {
        return Err(Error::invalid(format!("σ-family audit needs p, q >= 1 and p + q >= 3, got ({p}, {q_})")));
    }
    if a.len() != p as usize || b.len() != q_ as usize {
        return Err(Error::invalid(format!(
            "expected {p} values a and {q_} values b, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if let Some(z) = a.iter().chain(b).find(|x| num_traits::Zero::is_zero(*x)) {
        return Err(Error::refused(format!("non-generic parameters: {} is zero", exact::to_string(z))));
    }
    let mut ratios: Vec<(Q, String)> = Vec::new();
    for ai in a {
        for bj in b {
            let r = ai / bj;
            let label = format!("{}/{}", exact::to_string(ai), exact::to_string(bj));
            if let Some((_, prev)) = ratios.iter().find(|(x, _)| *x == r) {
                return Err(Error::refused(format!(
                    "non-generic parameters: ratios {prev} and {label} coincide"
                )));
            }
            ratios.push((r, label));
        }
    }
    Ok(())
}

/// `uz − a` as a polynomial in `z` over `ℚ[t]`.
fn linear(u: &Poly<Q>, a: &Q) -> Poly<Poly<Q>> {
    Poly::new(vec![Poly::constant(-a.clone()), u.clone()])
}

/// Numerator of `f′_{u,v}` up to sign, with `u`, `v` given as polynomials in t.
fn family_numerator(a: &[Q], b: &[Q], u: &Poly<Q>, v: &Poly<Q>) -> Poly<Poly<Q>> {
    let sq_a: Vec<_> = a.iter().map(|x| linear(u, x).pow(2)).collect();
    let sq_b: Vec<_> = b.iter().map(|x| linear(v, x).pow(2)).collect();
    let all: Vec<&Poly<Poly<Q>>> = sq_a.iter().chain(&sq_b).collect();
    let mut out = Poly::zero();
    for (i, scale) in a.iter().map(|_| u).chain(b.iter().map(|_| v)).enumerate() {
        let mut term = Poly::constant(scale.clone());
        for (k, f) in all.iter().enumerate() {
            if k != i {
                term = &term * *f;
            }
        }
        out = &out + &term;
    }
    out
}

/// `H(t, 1)`: the discriminant along the family with `v = 1`, `u = t`.
pub fn sigma_discriminant(a: &[Q], b: &[Q]) -> Result<Poly<Q>> {
    discriminant_z(&family_numerator(a, b, &qpoly(&[0, 1]), &qpoly(&[1])))
}

/// Recomputes `H` exactly and checks every claimed multiplicity.
pub fn sigma_discriminant_audit(p: u32, q_: u32, a: &[Q], b: &[Q]) -> Result<MultiplicityProfile> {
    check_generic(p, q_, a, b)?;
    let h_t = sigma_discriminant(a, b)?;
    let h_s = discriminant_z(&family_numerator(a, b, &qpoly(&[1]), &qpoly(&[0, 1])))?;
    if h_t.is_zero() || h_s.is_zero() {
        return Err(Error::refused("discriminant vanishes identically along the family"));
    }
    let (dt, ord_u) = (h_t.degree().unwrap(), h_t.trailing_order().unwrap());
    let (ds, ord_v) = (h_s.degree().unwrap(), h_s.trailing_order().unwrap());
    let total = dt + ord_v;
    let degree_certified = total == ds + ord_u;

    let ledger = expected_ledger(p as i64, q_ as i64);
    let mut points = Vec::new();
    let mut point = |root: String, expected: i64, m: usize| {
        points.push(MultiplicityPoint {
            root,
            expected: expected as u32,
            multiplicity: m as u32,
            ok: m as i64 == expected,
        });
    };
    point("u=0".into(), ledger.u_zero, ord_u);
    point("v=0".into(), ledger.v_zero, ord_v);

    let mut residual = Poly::new(h_t.coeffs()[ord_u..].to_vec());
    for ai in a {
        for bj in b {
            let r = ai / bj;
            let (m, rest) = residual.root_multiplicity(&r);
            residual = rest;
            point(format!("t={}", exact::to_string(&r)), 2, m);
        }
    }
    let residual_count = residual.degree().unwrap_or(0);
    let counted: usize = points.iter().map(|p| p.multiplicity as usize).sum::<usize>() + residual_count;
    if counted != total {
        return Err(Error::Inconsistent(format!(
            "multiplicities sum to {counted}, total degree is {total}"
        )));
    }
    let residual_squarefree = residual.degree().map_or(true, |d| d == 0 || residual.is_squarefree());

    let mut profile = MultiplicityProfile {
        p,
        q: q_,
        a: a.to_vec(),
        b: b.to_vec(),
        total_degree: total as u32,
        expected_total_degree: ledger.total_degree as u32,
        degree_certified,
        points,
        residual_simple_count: residual_count as u32,
        expected_residual: ledger.residual as u32,
        residual_squarefree,
        passed: false,
    };
    profile.passed = profile.failures().is_empty();
    Ok(profile)
}

/// [`sigma_discriminant_audit`] at the default prime parameters.
pub fn sigma_discriminant_audit_default(p: u32, q_: u32) -> Result<MultiplicityProfile> {
    let (a, b) = default_generic(p, q_);
    sigma_discriminant_audit(p, q_, &a, &b)
}
