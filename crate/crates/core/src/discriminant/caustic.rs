//! Caustic equations: the plane cubic of `ℙℋ_3` and the degree of the caustic
//! in a fibre of fixed poles.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::poly::{qpoly, Poly};
use super::resultant::discriminant_z;
use crate::error::{Error, Result};
use crate::exact::{self, q, Q};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryTerm {
    /// Exponents of `a`, `b`, `c`.
    pub exponents: [u32; 3],
    #[serde(with = "exact::serde_q")]
    pub coeff: Q,
}

/// A homogeneous form in `a, b, c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryForm {
    pub degree: u32,
    pub terms: Vec<TernaryTerm>,
}

fn monomials(degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

fn mono_eval(e: &[u32; 3], x: &[Q; 3]) -> Q {
    (0..3).fold(Q::one(), |acc, k| acc * num_traits::pow(x[k].clone(), e[k] as usize))
}

impl TernaryForm {
    fn from_map(degree: u32, map: BTreeMap<[u32; 3], Q>) -> Self {
        let mut terms: Vec<TernaryTerm> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coeff)| TernaryTerm { exponents, coeff })
            .collect();
        terms.sort_by(|x, y| y.exponents.cmp(&x.exponents));
        TernaryForm { degree, terms }
    }

    pub fn from_terms(degree: u32, terms: &[([u32; 3], i64)]) -> Self {
        Self::from_map(degree, terms.iter().map(|(e, c)| (*e, q(*c))).collect())
    }

    pub fn coeff(&self, e: [u32; 3]) -> Q {
        self.terms
            .iter()
            .find(|t| t.exponents == e)
            .map_or_else(Q::zero, |t| t.coeff.clone())
    }

    pub fn eval(&self, x: &[Q; 3]) -> Q {
        self.terms.iter().map(|t| &t.coeff * mono_eval(&t.exponents, x)).sum()
    }

    /// Partial derivative in variable `k`.
    pub fn partial(&self, k: usize) -> TernaryForm {
        let mut map = BTreeMap::new();
        for t in &self.terms {
            if t.exponents[k] > 0 {
                let mut e = t.exponents;
                e[k] -= 1;
                map.insert(e, &t.coeff * q(t.exponents[k] as i64));
            }
        }
        Self::from_map(self.degree.saturating_sub(1), map)
    }

    /// Every term divisible by variable `k`.
    pub fn divisible_by(&self, k: usize) -> bool {
        self.terms.iter().all(|t| t.exponents[k] > 0)
    }

    fn divide_by_var(&self, k: usize) -> TernaryForm {
        let map = self
            .terms
            .iter()
            .map(|t| {
                let mut e = t.exponents;
                e[k] -= 1;
                (e, t.coeff.clone())
            })
            .collect();
        Self::from_map(self.degree - 1, map)
    }

    fn scaled(&self, c: &Q) -> TernaryForm {
        let map = self.terms.iter().map(|t| (t.exponents, &t.coeff * c)).collect();
        Self::from_map(self.degree, map)
    }

    /// Restriction to the line `x_k = 0`, dehomogenized by setting the last
    /// remaining variable to 1; a polynomial in the other one.
    pub fn restrict_to_line(&self, k: usize) -> Poly<Q> {
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let mut coeffs = vec![Q::zero(); self.degree as usize + 1];
        for t in self.terms.iter().filter(|t| t.exponents[k] == 0) {
            coeffs[t.exponents[others[0]] as usize] += &t.coeff;
        }
        Poly::new(coeffs)
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = t.coeff.abs();
            let vars: Vec<String> = ["a", "b", "c"]
                .iter()
                .zip(t.exponents)
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", exact::to_string(&mag))?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{}*{}", exact::to_string(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `a³+b³+c³+3ab²+3ac²+3a²b+3bc²+3a²c+3b²c−21abc`.
pub fn expected_caustic_cubic() -> TernaryForm {
    TernaryForm::from_terms(
        3,
        &[
            ([3, 0, 0], 1),
            ([0, 3, 0], 1),
            ([0, 0, 3], 1),
            ([1, 2, 0], 3),
            ([1, 0, 2], 3),
            ([2, 1, 0], 3),
            ([0, 1, 2], 3),
            ([2, 0, 1], 3),
            ([0, 2, 1], 3),
            ([1, 1, 1], -21),
        ],
    )
}

/// Numerator of `d/dz (az − b/z − c/(z−1))`: `a z²(z−1)² + b(z−1)² + c z²`.
fn cubic_family_numerator(x: &[Q; 3]) -> Poly<Q> {
    let z2 = qpoly(&[0, 0, 1]);
    let zm1_2 = qpoly(&[-1, 1]).pow(2);
    let a = (&z2 * &zm1_2).scale(&x[0]);
    let b = zm1_2.scale(&x[1]);
    let c = z2.scale(&x[2]);
    &(&a + &b) + &c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineContact {
    pub line: String,
    /// Highest intersection multiplicity at a single point of the line.
    pub multiplicity: u32,
    pub point: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CausticCubic {
    /// The cubic factor, normalized so the `a³` coefficient is 1.
    pub cubic: TernaryForm,
    /// Raw discriminant = `cofactor_scalar · abc · cubic`.
    #[serde(with = "exact::serde_q")]
    pub cofactor_scalar: Q,
    pub cofactor: String,
    pub raw_discriminant: TernaryForm,
    pub matches_expected: bool,
    pub passes_through_111: bool,
    pub singular_at_111: bool,
    pub line_contacts: Vec<LineContact>,
}

impl CausticCubic {
    pub fn passed(&self) -> bool {
        self.matches_expected
            && self.passes_through_111
            && self.line_contacts.iter().all(|l| l.multiplicity == 3)
    }
}

fn line_contact(form: &TernaryForm, k: usize) -> LineContact {
    let names = ["a", "b", "c"];
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let g = form.restrict_to_line(k);
    let d = form.degree as usize;
    let at_infinity = d - g.degree().unwrap_or(0);
    let mut best = (at_infinity as u32, format!("{}=1, {}=0", names[others[0]], names[others[1]]));
    // a rational triple root of a binary cubic is −g₂/(3g₃)
    if let Some(gd) = g.degree().filter(|&gd| gd > 0) {
        let r = -g.coeff(gd - 1) / (q(gd as i64) * g.lc());
        let (m, _) = g.root_multiplicity(&r);
        if m as u32 > best.0 {
            best = (m as u32, format!("{}={}, {}=1", names[others[0]], exact::to_string(&r), names[others[1]]));
        }
    }
    LineContact {
        line: format!("{}=0", names[k]),
        multiplicity: best.0,
        point: best.1,
    }
}

/// Recomputes the `ℙℋ_3` caustic from the discriminant of the numerator of
/// `f′` for `f = az − b/z − c/(z−1)`, by evaluation and interpolation over the
/// 28 sextic monomials, and isolates the cubic factor.
pub fn caustic_cubic_n3() -> Result<CausticCubic> {
    let sextic = monomials(6);
    let mut points: Vec<[Q; 3]> = Vec::new();
    for i in 1..=5i64 {
        for j in 1..=5i64 {
            for k in [1i64, 2] {
                points.push([q(i), q(2 * j - 7), q(3 * k + i - j)]);
            }
        }
    }
    let values = points
        .iter()
        .map(|x| discriminant_z(&cubic_family_numerator(x)))
        .collect::<Result<Vec<_>>>()?;
    let columns: Vec<Vec<Q>> = sextic
        .iter()
        .map(|e| points.iter().map(|x| mono_eval(e, x)).collect())
        .collect();
    let rows: Vec<Vec<Q>> = (0..points.len())
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    if linalg::rank(&rows) != sextic.len() {
        return Err(Error::Inconsistent("interpolation nodes do not determine the sextic".into()));
    }
    let coeffs = linalg::solve(&columns, &values)
        .ok_or_else(|| Error::Inconsistent("discriminant is not a sextic form in (a, b, c)".into()))?;
    let raw = TernaryForm::from_map(6, sextic.into_iter().zip(coeffs).collect());

    if !(0..3).all(|k| raw.divisible_by(k)) {
        return Err(Error::Inconsistent(format!(
            "discriminant is not divisible by abc; raw discriminant: {raw}"
        )));
    }
    let reduced = raw.divide_by_var(0).divide_by_var(1).divide_by_var(2);
    if (0..3).any(|k| reduced.divisible_by(k)) {
        return Err(Error::Inconsistent(format!(
            "cubic factor not isolated: monomial factor left in {reduced}"
        )));
    }
    let scalar = reduced.coeff([3, 0, 0]);
    if scalar.is_zero() {
        return Err(Error::Inconsistent(format!("no a³ term to normalize by in {reduced}")));
    }
    let cubic = reduced.scaled(&scalar.recip());
    let one = [q(1), q(1), q(1)];
    let singular_at_111 = (0..3).all(|k| cubic.partial(k).eval(&one).is_zero());
    Ok(CausticCubic {
        matches_expected: cubic == expected_caustic_cubic(),
        passes_through_111: cubic.eval(&one).is_zero(),
        singular_at_111,
        line_contacts: (0..3).map(|k| line_contact(&cubic, k)).collect(),
        cofactor: format!("{}*a*b*c", exact::to_string(&scalar)),
        cofactor_scalar: scalar,
        raw_discriminant: raw,
        cubic,
    })
}

/// Degree of the caustic in the space of residues `(c_1, …, c_m)` with the
/// poles fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDegree {
    pub m: u32,
    /// Homogeneous degree of the full discriminant in the `c_i`.
    pub discriminant_degree: u32,
    /// Vanishing order along each hyperplane `c_i = 0`.
    pub hyperplane_orders: Vec<u32>,
    /// Degree after dividing out `∏ c_i`.
    pub degree: u32,
}

const PROBE_RETRIES: usize = 16;

fn residue_numerator(poles: &[Q], c: &[Q]) -> Poly<Q> {
    let lin: Vec<Poly<Q>> = poles
        .iter()
        .map(|z| Poly::linear_root(z.clone()).pow(2))
        .collect();
    let mut out = Poly::zero();
    for (i, ci) in c.iter().enumerate() {
        let mut term = Poly::constant(ci.clone());
        for (k, l) in lin.iter().enumerate() {
            if k != i {
                term = &term * l;
            }
        }
        out = &out + &term;
    }
    out
}

/// Discriminant of the numerator of `(Σ c_i/(z−z_i))′`, defined only where
/// the numerator keeps its full degree `2m−2`.
fn residue_discriminant(poles: &[Q], c: &[Q]) -> Option<Q> {
    let c_sum: Q = c.iter().sum();
    if c_sum.is_zero() {
        return None;
    }
    discriminant_z(&residue_numerator(poles, c)).ok()
}

/// Homogeneous degree of the caustic hypersurface in the residues, found by a
/// scaling probe at seeded random residues, after removing the simple
/// hyperplanes `c_i = 0`.
pub fn caustic_fiber_degree(m: u32, poles: &[Q], seed: u64) -> Result<FiberDegree> {
    if m < 3 {
        return Err(Error::invalid(format!("caustic fibre needs m >= 3 poles, got {m}")));
    }
    if poles.len() != m as usize {
        return Err(Error::invalid(format!("expected {m} poles, got {}", poles.len())));
    }
    for i in 0..poles.len() {
        if poles[i + 1..].contains(&poles[i]) {
            return Err(Error::invalid(format!("pole {} repeated", exact::to_string(&poles[i]))));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Q {
        loop {
            let v: i64 = rng.gen_range(-30..=30);
            if v != 0 {
                return q(v);
            }
        }
    };

    for _ in 0..PROBE_RETRIES {
        let c: Vec<Q> = (0..m).map(|_| draw()).collect();
        let Some(base) = residue_discriminant(poles, &c).filter(|d| !d.is_zero()) else {
            log::debug!("probe hit the discriminant locus, redrawing");
            continue;
        };
        let scaled: Vec<Q> = c.iter().map(|x| x * q(2)).collect();
        let ratio = residue_discriminant(poles, &scaled).expect("scaling keeps Σc ≠ 0") / &base;
        let discriminant_degree = power_of_two(&ratio)
            .ok_or_else(|| Error::Inconsistent(format!("scaling ratio {ratio} is not a power of 2")))?;

        // order of vanishing along c_i = 0, from the interpolated restriction
        let mut orders = Vec::with_capacity(m as usize);
        let mut degenerate = false;
        for i in 0..m as usize {
            let rest: Q = c.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| x).sum();
            if rest.is_zero() {
                degenerate = true;
                break;
            }
            let mut nodes = Vec::new();
            let mut eps = 0i64;
            while nodes.len() <= discriminant_degree as usize + 1 {
                let e = q(eps);
                eps += 1;
                let mut ci = c.clone();
                ci[i] = e.clone();
                if let Some(v) = residue_discriminant(poles, &ci) {
                    nodes.push((e, v));
                }
            }
            let (check, fit) = nodes.split_last().expect("nonempty");
            let restriction = Poly::interpolate(fit);
            if restriction.eval(&check.0) != check.1 {
                return Err(Error::Inconsistent(format!(
                    "restriction to c_{} is not a polynomial of degree <= {discriminant_degree}",
                    i + 1
                )));
            }
            match restriction.trailing_order() {
                Some(o) => orders.push(o as u32),
                None => {
                    degenerate = true;
                    break;
                }
            }
        }
        if degenerate {
            continue;
        }
        let removed: u32 = orders.iter().sum();
        return Ok(FiberDegree {
            m,
            discriminant_degree,
            degree: discriminant_degree - removed,
            hyperplane_orders: orders,
        });
    }
    Err(Error::refused(format!(
        "no generic residue vector found in {PROBE_RETRIES} draws"
    )))
}

fn power_of_two(x: &Q) -> Option<u32> {
    if !x.is_integer() || !x.is_positive() {
        return None;
    }
    let n = x.numer();
    let k = n.trailing_zeros()? as u32;
    (n >> k as usize == num_bigint::BigInt::one()).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_matches() {
        let r = caustic_cubic_n3().unwrap();
        assert!(r.matches_expected, "{}", r.cubic);
        assert!(r.passes_through_111);
        assert!(r.singular_at_111);
        assert_eq!(r.cofactor, "16*a*b*c");
        for l in &r.line_contacts {
            assert_eq!(l.multiplicity, 3, "{}", l.line);
        }
        assert!(r.passed());
        assert_eq!(r.cubic.terms.len(), 10);
    }

    #[test]
    fn expected_cubic_restricts_to_cube() {
        let c = expected_caustic_cubic();
        assert_eq!(c.restrict_to_line(0), qpoly(&[1, 3, 3, 1]));
        assert_eq!(
            c.to_string(),
            "a^3 + 3*a^2*b + 3*a^2*c + 3*a*b^2 - 21*a*b*c + 3*a*c^2 + b^3 + 3*b^2*c + 3*b*c^2 + c^3"
        );
    }

    #[test]
    fn sanity_direct_evaluation() {
        // the sextic is 16abc times the cubic at an arbitrary point
        let x = [q(2), q(-3), q(5)];
        let d = discriminant_z(&cubic_family_numerator(&x)).unwrap();
        let expected = q(16) * q(2 * -3 * 5) * expected_caustic_cubic().eval(&x);
        assert_eq!(d, expected);
    }

    #[test]
    fn fiber_degrees() {
        for m in 3..=5u32 {
            let poles: Vec<Q> = (0..m as i64).map(|k| q(k * k + 1)).collect();
            let f = caustic_fiber_degree(m, &poles, 7).unwrap();
            assert_eq!(f.degree, 3 * (m - 2), "m={m}");
            assert_eq!(f.discriminant_degree, 4 * m - 6);
            assert!(f.hyperplane_orders.iter().all(|&o| o == 1));
        }
    }

    #[test]
    fn fiber_degree_independent_of_draws() {
        let m = 4;
        for (seed, poles) in [(1u64, [0, 1, 3, 7]), (2, [-2, 5, 6, 11]), (3, [1, 2, 4, 9])] {
            let poles: Vec<Q> = poles.iter().map(|&p| q(p)).collect();
            assert_eq!(caustic_fiber_degree(m, &poles, seed).unwrap().degree, 6);
        }
    }

    #[test]
    fn fiber_degree_rejects_bad_input() {
        assert!(caustic_fiber_degree(2, &[q(0), q(1)], 0).is_err());
        assert!(caustic_fiber_degree(3, &[q(0), q(1), q(1)], 0).is_err());
        assert!(caustic_fiber_degree(3, &[q(0), q(1)], 0).is_err());
    }
}
