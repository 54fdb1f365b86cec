//! Closed formulas for genus-zero Hurwitz numbers, and the bridge converting a
//! Hurwitz number into the Lyashko–Looijenga degree `μ` of the stratum and
//! the coupling `⟨ℙΣ, Ψ^d⟩`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Partition, RamificationProfile};
use crate::error::{Error, Result};
use crate::exact::{self, factorial_q, frac, pow_signed, q, Q};

/// Hurwitz's count for one critical value of type `κ = (k_1..k_m)` and all
/// other critical values simple:
///
/// `(2n−2−d)! / ((n−d−m)! |Aut κ|) · ∏ (k_i+1)^{k_i+1}/(k_i+1)! · n^{n−d−3}`.
///
/// The power of `n` may be negative; it is taken as an exact reciprocal.
pub fn hurwitz_formula(n: u32, kappa: &Partition) -> Result<Q> {
    let (n, d, m) = (n as i64, kappa.degeneracy() as i64, kappa.len() as i64);
    if n < 2 {
        return Err(Error::invalid("degree must be at least 2"));
    }
    if n - d - m < 0 || 2 * n - 2 - d < 0 {
        return Err(Error::refused(format!("no stratum of type {kappa} in degree {n}")));
    }
    let mut h = factorial_q((2 * n - 2 - d) as u64) / factorial_q((n - d - m) as u64);
    h /= Q::from_integer(kappa.aut());
    for &k in kappa.parts() {
        let k1 = k as i64 + 1;
        h *= pow_signed(k1, k1) / factorial_q(k1 as u64);
    }
    Ok(h * pow_signed(n, n - d - 3))
}

/// Coverings with two double critical points and `2n−6` simple ones:
///
/// `(3/4)(27n² − 137n + 180) · n^{n−6} (2n−6)! / (n−3)!`.
///
/// Defined for `n ≥ 3`; at `n = 3` there are no simple points and the value
/// 1/3 agrees with the oracle.
pub fn h22_formula(n: u32) -> Result<Q> {
    if n < 3 {
        return Err(Error::refused(format!(
            "two double critical points need degree at least 3, got {n}"
        )));
    }
    let n = n as i64;
    let poly = q(27 * n * n - 137 * n + 180);
    Ok(frac(3, 4)
        * poly
        * pow_signed(n, n - 6)
        * factorial_q((2 * n - 6) as u64)
        / factorial_q((n - 3) as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// One arbitrary critical value, all others simple.
    Hurwitz,
    /// Two double critical points over distinct values, all others simple.
    TwoDouble,
}

/// The closed formula that applies to `profile`, with its value.
pub fn closed_form_for(profile: &RamificationProfile) -> Option<(ClosedForm, Q)> {
    let simple: Partition = Partition::new(vec![1]).expect("valid");
    let double: Partition = Partition::new(vec![2]).expect("valid");
    let special: Vec<&Partition> = profile.types().iter().filter(|k| **k != simple).collect();
    match special.as_slice() {
        [] => hurwitz_formula(profile.n(), &simple)
            .ok()
            .map(|h| (ClosedForm::Hurwitz, h)),
        [kappa] => hurwitz_formula(profile.n(), kappa)
            .ok()
            .map(|h| (ClosedForm::Hurwitz, h)),
        [a, b] if **a == double && **b == double => {
            h22_formula(profile.n()).ok().map(|h| (ClosedForm::TwoDouble, h))
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub n: u32,
    pub profile: String,
    #[serde(with = "exact::serde_q")]
    pub h: Q,
    /// Degree of the Lyashko–Looijenga map on the stratum.
    #[serde(with = "exact::serde_q")]
    pub mu: Q,
    /// `⟨ℙΣ, Ψ^d⟩` with `d = c − 1`.
    #[serde(with = "exact::serde_q")]
    pub coupling: Q,
    #[serde(with = "exact::serde_bigint")]
    pub aut_kappa: BigInt,
    #[serde(with = "exact::serde_bigint")]
    pub aut_d: BigInt,
    pub stratum_dimension: usize,
}

/// Inverts `h = (1/n!)·(|Aut{κ}|/|Aut{d}|)·μ` and `μ = |Aut{d}|·⟨ℙΣ, Ψ^d⟩`.
///
/// A non-integral `μ` means `h` cannot be the Hurwitz number of this profile.
pub fn bridge(profile: &RamificationProfile, h: &Q) -> Result<BridgeReport> {
    let aut_kappa = profile.aut_types();
    let aut_d = profile.aut_degeneracies();
    let aut_kappa_q = Q::from_integer(aut_kappa.clone());
    let aut_d_q = Q::from_integer(aut_d.clone());
    let mu = h * factorial_q(profile.n() as u64) * &aut_d_q / aut_kappa_q;
    if !exact::is_nonneg_integer(&mu) {
        return Err(Error::Inconsistent(format!(
            "h = {} gives non-integral LL degree mu = {} for {profile}",
            exact::to_string(h),
            exact::to_string(&mu)
        )));
    }
    let coupling = &mu / aut_d_q;
    Ok(BridgeReport {
        n: profile.n(),
        profile: profile.to_string(),
        h: h.clone(),
        mu,
        coupling,
        aut_kappa,
        aut_d,
        stratum_dimension: profile.stratum_dimension(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn hurwitz_formula_examples() {
        assert_eq!(hurwitz_formula(3, &p("1")).unwrap(), q(4));
        assert_eq!(hurwitz_formula(2, &p("1")).unwrap(), frac(1, 2));
        assert!(hurwitz_formula(3, &p("2,1")).is_err());
    }

    #[test]
    fn all_simple_identity() {
        for n in 2..=8u32 {
            let h = hurwitz_formula(n, &p("1")).unwrap();
            let lhs = h * factorial_q(n as u64) / factorial_q(2 * n as u64 - 2);
            assert_eq!(lhs, pow_signed(n as i64, n as i64 - 3), "n={n}");
        }
    }

    #[test]
    fn h22_formula_arithmetic() {
        assert_eq!(h22_formula(4).unwrap(), q(6));
        assert_eq!(h22_formula(3).unwrap(), frac(1, 3));
        assert!(h22_formula(2).is_err());
    }

    #[test]
    fn bridge_examples() {
        let r = bridge(&RamificationProfile::all_simple(3).unwrap(), &q(4)).unwrap();
        assert_eq!((r.mu.clone(), r.coupling.clone()), (q(24), q(1)));
        assert_eq!(r.aut_d, BigInt::from(24));

        let r = bridge(&RamificationProfile::parse(2, "1;1").unwrap(), &frac(1, 2)).unwrap();
        assert_eq!((r.mu.clone(), r.coupling.clone()), (q(1), frac(1, 2)));

        let prof = RamificationProfile::parse(4, "2;2;1;1").unwrap();
        let r = bridge(&prof, &q(6)).unwrap();
        assert_eq!(r.aut_kappa, BigInt::from(4));
        assert_eq!(r.aut_d, BigInt::from(4));
        assert_eq!(r.mu, q(144));
        assert_eq!(r.coupling, q(36));

        let err = bridge(&prof, &frac(1, 7)).unwrap_err();
        assert!(matches!(err, Error::Inconsistent(_)));
    }

    #[test]
    fn closed_form_detection() {
        let all = RamificationProfile::all_simple(4).unwrap();
        assert_eq!(closed_form_for(&all).unwrap(), (ClosedForm::Hurwitz, q(120)));
        let two = RamificationProfile::parse(4, "1;2;1;2").unwrap();
        assert_eq!(closed_form_for(&two).unwrap(), (ClosedForm::TwoDouble, q(6)));
        let mixed = RamificationProfile::parse(4, "2;1,1;1;1").unwrap();
        assert!(closed_form_for(&mixed).is_none());
    }

    #[test]
    fn report_round_trips() {
        let r = bridge(&RamificationProfile::parse(2, "1;1").unwrap(), &frac(1, 2)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"coupling\":\"1/2\""));
        assert_eq!(serde_json::from_str::<BridgeReport>(&s).unwrap(), r);
    }
}
