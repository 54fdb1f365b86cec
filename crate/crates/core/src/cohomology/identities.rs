//! Linear identities among `Ψ`, the boundary classes `Δ_{p,q}`, `Δ_n`, the
//! caustic `C_n` and the Maxwell stratum `M_n`, checked exactly modulo the
//! four-point relations.

use serde::{Deserialize, Serialize};

use super::classes::{delta_pq, delta_total, SymmetricClass};
use super::lattice::{relation_lattice, RelationLattice};
use super::vector::H2Vector;
use crate::error::{Error, Result};
use crate::exact::{self, frac, q, Q};

/// Default upper bound on `n` for identity verification.
pub const VERIFY_BOUND: u32 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Term {
    Psi,
    Delta { p: u32, q: u32 },
    DeltaTotal,
    /// `C_n` taken as `6(n−1)Ψ − 3Δ_n`.
    CausticFromPsi,
    /// `C_n` taken as `3 Σ (pq/n − 1/2) Δ_{p,q}`.
    CausticFromDeltas,
    /// `M_n` taken as `2(n−1)(n−6)Ψ + 4Δ_n`.
    MaxwellFromPsi,
    /// `M_n` taken as `Σ ((n−6)pq/n + 2) Δ_{p,q}`.
    MaxwellFromDeltas,
}

impl Term {
    fn evaluate(&self, n: u32) -> Result<H2Vector> {
        let n_ = n as i64;
        let delta_sum = |f: &dyn Fn(i64) -> Q| -> Result<H2Vector> {
            let mut v = H2Vector::zero(n);
            for p in 1..n {
                let pq = (p * (n - p)) as i64;
                v.add_scaled(&delta_pq(n, p, n - p)?, &f(pq));
            }
            Ok(v)
        };
        match *self {
            Term::Psi => Ok(H2Vector::psi(n)),
            Term::Delta { p, q } => delta_pq(n, p, q),
            Term::DeltaTotal => delta_total(n),
            Term::CausticFromPsi => SymmetricClass::caustic(n)?.expand(),
            Term::MaxwellFromPsi => SymmetricClass::maxwell(n)?.expand(),
            Term::CausticFromDeltas => delta_sum(&|pq| q(3) * (frac(pq, n_) - frac(1, 2))),
            Term::MaxwellFromDeltas => delta_sum(&|pq| frac((n_ - 6) * pq, n_) + q(2)),
        }
    }

    fn label(&self) -> String {
        match self {
            Term::Psi => "Ψ".into(),
            Term::Delta { p, q } => format!("Δ_{{{p},{q}}}"),
            Term::DeltaTotal => "Δ".into(),
            Term::CausticFromPsi | Term::CausticFromDeltas => "C".into(),
            Term::MaxwellFromPsi | Term::MaxwellFromDeltas => "M".into(),
        }
    }
}

/// A claimed relation `Σ c_t · t = 0` in `H²(ℙℋ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub n: u32,
    pub terms: Vec<WeightedTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedTerm {
    pub term: Term,
    #[serde(with = "exact::serde_q")]
    pub coeff: Q,
}

impl Identity {
    fn new(name: &str, n: u32, terms: Vec<(Term, Q)>) -> Self {
        Identity {
            name: name.into(),
            n,
            terms: terms.into_iter().map(|(term, coeff)| WeightedTerm { term, coeff }).collect(),
        }
    }

    pub fn residual(&self) -> Result<H2Vector> {
        let mut v = H2Vector::zero(self.n);
        for t in &self.terms {
            v.add_scaled(&t.term.evaluate(self.n)?, &t.coeff);
        }
        Ok(v)
    }

    /// The same identity with one coefficient shifted.
    pub fn perturbed(&self, term_index: usize, by: &Q) -> Identity {
        let mut out = self.clone();
        out.terms[term_index].coeff += by;
        out.name = format!("{} (term {term_index} shifted by {})", self.name, exact::to_string(by));
        out
    }

    /// Human-readable `Σ c·t = 0`.
    pub fn statement(&self) -> String {
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("({})·{}", exact::to_string(&t.coeff), t.term.label()))
            .collect();
        format!("{} = 0", body.join(" + "))
    }
}

/// The two expressions for `Ψ` and the four for `C_n`, `M_n`, each written as
/// a vanishing combination.
pub fn identities(n: u32) -> Vec<Identity> {
    let n_ = n as i64;
    let deltas = |f: &dyn Fn(i64) -> Q| -> Vec<(Term, Q)> {
        (1..n)
            .map(|p| (Term::Delta { p, q: n - p }, f((p * (n - p)) as i64)))
            .collect()
    };
    let neg = |x: Q| -x;

    let mut psi_weighted = vec![(Term::Psi, q(1))];
    psi_weighted.extend(deltas(&|pq| neg(frac(pq, 2 * n_ * (n_ - 1)))));

    let s = (2 * n_ - 2) * (2 * n_ - 3);
    let psi_strata = vec![
        (Term::Psi, q(1)),
        (Term::CausticFromPsi, frac(-3, s)),
        (Term::MaxwellFromPsi, frac(-2, s)),
        (Term::DeltaTotal, frac(-1, s)),
    ];

    let caustic_psi = vec![
        (Term::CausticFromDeltas, q(1)),
        (Term::Psi, q(-6 * (n_ - 1))),
        (Term::DeltaTotal, q(3)),
    ];
    let maxwell_psi = vec![
        (Term::MaxwellFromDeltas, q(1)),
        (Term::Psi, q(-2 * (n_ - 1) * (n_ - 6))),
        (Term::DeltaTotal, q(-4)),
    ];

    let mut caustic_deltas = vec![(Term::CausticFromPsi, q(1))];
    caustic_deltas.extend(deltas(&|pq| neg(q(3) * (frac(pq, n_) - frac(1, 2)))));
    let mut maxwell_deltas = vec![(Term::MaxwellFromPsi, q(1))];
    maxwell_deltas.extend(deltas(&|pq| neg(frac((n_ - 6) * pq, n_) + q(2))));

    vec![
        Identity::new("psi_weighted_boundary", n, psi_weighted),
        Identity::new("psi_from_strata", n, psi_strata),
        Identity::new("caustic_psi_form", n, caustic_psi),
        Identity::new("maxwell_psi_form", n, maxwell_psi),
        Identity::new("caustic_delta_form", n, caustic_deltas),
        Identity::new("maxwell_delta_form", n, maxwell_deltas),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    /// The unreduced residual, reported only on failure.
    pub residual: Option<H2Vector>,
}

pub fn verify_identity(identity: &Identity, lattice: &RelationLattice) -> Result<IdentityCheck> {
    let residual = identity.residual()?;
    let passed = lattice.contains(&residual);
    Ok(IdentityCheck {
        name: identity.name.clone(),
        statement: identity.statement(),
        passed,
        residual: (!passed).then_some(residual),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: u32,
    pub lattice_rank: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks every identity of [`identities`] for `4 ≤ n ≤ bound`.
pub fn verify_identities(n: u32, bound: u32) -> Result<IdentityReport> {
    if n < 4 || n > bound {
        return Err(Error::refused(format!("identity verification needs 4 <= n <= {bound}, got {n}")));
    }
    let lattice = relation_lattice(n);
    let checks = identities(n)
        .iter()
        .map(|id| verify_identity(id, &lattice))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport {
        n,
        lattice_rank: lattice.rank(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::super::split::MarkSplit;
    use super::*;

    #[test]
    fn all_identities_hold() {
        for n in 4..=7 {
            let r = verify_identities(n, VERIFY_BOUND).unwrap();
            assert!(r.all_passed(), "n={n}: {:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
            assert_eq!(r.checks.len(), 6);
        }
    }

    #[test]
    fn perturbations_fail() {
        let n = 5;
        let lattice = relation_lattice(n);
        for id in identities(n) {
            for i in 0..id.terms.len() {
                let bad = id.perturbed(i, &q(1));
                let check = verify_identity(&bad, &lattice).unwrap();
                assert!(!check.passed, "{}", bad.name);
                assert!(check.residual.is_some());
            }
        }
    }

    #[test]
    fn residual_coordinate_perturbation_fails() {
        let n = 6;
        let lattice = relation_lattice(n);
        let id = &identities(n)[0];
        let residual = id.residual().unwrap();
        assert!(lattice.contains(&residual));
        for d in MarkSplit::boundary(n) {
            let mut bumped = residual.clone();
            bumped.add_split(d, &q(1));
            assert!(!lattice.contains(&bumped), "{d}");
        }
        let mut bumped = residual;
        bumped.add_psi(&q(1));
        assert!(!lattice.contains(&bumped));
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(verify_identities(3, VERIFY_BOUND).is_err());
        assert!(verify_identities(10, VERIFY_BOUND).is_err());
    }

    #[test]
    fn report_round_trips() {
        let r = verify_identities(4, VERIFY_BOUND).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<IdentityReport>(&s).unwrap(), r);
    }
}
