use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::split::MarkSplit;
use super::vector::H2Vector;
use crate::error::{Error, Result};
use crate::exact::{self, frac, q, Q};

fn check_marks(n: u32, i: u32, j: u32, k: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::invalid(format!("need at least 3 marks, got {n}")));
    }
    let ok = [i, j, k].iter().all(|&m| (1..=n).contains(&m)) && i != j && j != k && i != k;
    if !ok {
        return Err(Error::invalid(format!(
            "marks ({i}, {j}, {k}) must be pairwise distinct in 1..={n}"
        )));
    }
    Ok(())
}

/// `ψ_i = [i*Djk]`: the boundary divisors with `i` on one side and `j, k` on
/// the other. Zero for `n = 3`, where the moduli space is a point.
pub fn psi_small(i: u32, j: u32, k: u32, n: u32) -> Result<H2Vector> {
    check_marks(n, i, j, k)?;
    let mut v = H2Vector::zero(n);
    let one = q(1);
    for d in MarkSplit::boundary(n).filter(|d| d.separates(i, j, k)) {
        v.add_split(d, &one);
    }
    Ok(v)
}

/// `ψ_i` with the two smallest other marks as the reference pair.
fn psi_canonical(i: u32, n: u32) -> H2Vector {
    if n < 3 {
        return H2Vector::zero(n);
    }
    let mut others = (1..=n).filter(|&m| m != i);
    let (j, k) = (others.next().unwrap(), others.next().unwrap());
    psi_small(i, j, k, n).expect("distinct marks")
}

/// The class of the divisor where the marks split as `D`. Singleton blocks
/// `{i}` give `Ψ − ψ_i`.
pub fn boundary_class(d: MarkSplit) -> H2Vector {
    match d.singleton() {
        None => H2Vector::split(d).expect("boundary split"),
        Some(i) => &H2Vector::psi(d.n()) - &psi_canonical(i, d.n()),
    }
}

/// `[iDjk]`: every split, singletons included, separating `i` from `{j, k}`.
/// Equal to `Ψ` in cohomology.
pub fn psi_big(i: u32, j: u32, k: u32, n: u32) -> Result<H2Vector> {
    check_marks(n, i, j, k)?;
    let mut v = H2Vector::zero(n);
    for d in MarkSplit::all(n).filter(|d| d.separates(i, j, k)) {
        v.add_scaled(&boundary_class(d), &q(1));
    }
    Ok(v)
}

/// `Δ_{p,q}`: the sum of `[A ⊔ B]` over ordered pairs with `|A| = p`, `|B| = q`.
/// For `p = q` each unordered split is counted twice.
pub fn delta_pq(n: u32, p: u32, qq: u32) -> Result<H2Vector> {
    if p == 0 || qq == 0 || p + qq != n {
        return Err(Error::invalid(format!("need p, q >= 1 with p + q = n, got {p} + {qq} vs {n}")));
    }
    let mut v = H2Vector::zero(n);
    for d in MarkSplit::all(n) {
        let (a, b) = d.sizes();
        // ordered pairs (A, B) and (B, A) both come from the unordered split d
        let weight = (a == p) as i64 + (b == p) as i64;
        if weight > 0 {
            v.add_scaled(&boundary_class(d), &q(weight));
        }
    }
    Ok(v)
}

/// `Δ_n = ½ Σ_{p+q=n} Δ_{p,q}`: every unordered split with coefficient one.
pub fn delta_total(n: u32) -> Result<H2Vector> {
    if n < 2 {
        return Err(Error::invalid("need at least 2 marks"));
    }
    let mut v = H2Vector::zero(n);
    for p in 1..n {
        v.add_scaled(&delta_pq(n, p, n - p)?, &frac(1, 2));
    }
    Ok(v)
}

/// `C_n = 6(n−1) Ψ − 3 Δ_n`.
pub fn caustic_class(n: u32) -> Result<H2Vector> {
    Ok(SymmetricClass::caustic(n)?.expand()?)
}

/// `M_n = 2(n−1)(n−6) Ψ + 4 Δ_n`.
pub fn maxwell_class(n: u32) -> Result<H2Vector> {
    Ok(SymmetricClass::maxwell(n)?.expand()?)
}

/// A combination of `Ψ` and the `Δ_{p,q}` (indexed by ordered pairs), kept
/// symbolic so σ-pairings can be read off term by term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricClass {
    pub n: u32,
    #[serde(with = "exact::serde_q")]
    pub psi: Q,
    /// Coefficient of `Δ_{p, n−p}`, keyed by `p`.
    #[serde(with = "delta_map")]
    pub delta: BTreeMap<u32, Q>,
}

impl SymmetricClass {
    pub fn zero(n: u32) -> Self {
        SymmetricClass {
            n,
            psi: Q::zero(),
            delta: BTreeMap::new(),
        }
    }

    pub fn psi(n: u32) -> Self {
        let mut c = Self::zero(n);
        c.psi = q(1);
        c
    }

    pub fn delta_pq(n: u32, p: u32) -> Self {
        let mut c = Self::zero(n);
        c.add_delta(p, &q(1));
        c
    }

    pub fn add_delta(&mut self, p: u32, c: &Q) {
        let e = self.delta.entry(p).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.delta.remove(&p);
        }
    }

    pub fn add_scaled(&mut self, other: &SymmetricClass, c: &Q) {
        assert_eq!(self.n, other.n);
        self.psi += &other.psi * c;
        for (p, x) in &other.delta {
            self.add_delta(*p, &(x * c));
        }
    }

    /// `Δ_n`.
    pub fn delta_total(n: u32) -> Self {
        let mut c = Self::zero(n);
        for p in 1..n {
            c.add_delta(p, &frac(1, 2));
        }
        c
    }

    pub fn caustic(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("the caustic class needs n >= 3"));
        }
        let mut c = Self::delta_total(n);
        for x in c.delta.values_mut() {
            *x *= q(-3);
        }
        c.psi = q(6 * (n as i64 - 1));
        Ok(c)
    }

    pub fn maxwell(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("the Maxwell class needs n >= 3"));
        }
        let n_ = n as i64;
        let mut c = Self::delta_total(n);
        for x in c.delta.values_mut() {
            *x *= q(4);
        }
        c.psi = q(2 * (n_ - 1) * (n_ - 6));
        Ok(c)
    }

    pub fn expand(&self) -> Result<H2Vector> {
        let mut v = H2Vector::psi(self.n).scaled(&self.psi);
        for (p, x) in &self.delta {
            v.add_scaled(&delta_pq(self.n, *p, self.n - p)?, x);
        }
        Ok(v)
    }
}

mod delta_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u32, Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let as_str: BTreeMap<String, String> =
            m.iter().map(|(p, x)| (p.to_string(), exact::to_string(x))).collect();
        as_str.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<u32, Q>, D::Error> {
        use serde::de::Error as _;
        BTreeMap::<String, String>::deserialize(d)?
            .into_iter()
            .map(|(p, x)| {
                Ok((
                    p.parse().map_err(D::Error::custom)?,
                    exact::parse(&x).map_err(D::Error::custom)?,
                ))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::lattice::relation_lattice;
    use super::*;

    fn split(n: u32, a: &[u32]) -> MarkSplit {
        MarkSplit::new(n, a).unwrap()
    }

    #[test]
    fn boundary_class_examples() {
        let d1 = split(4, &[1, 2]);
        let v = boundary_class(d1);
        assert_eq!(v.coeff(&d1), q(1));
        assert!(v.psi_coeff().is_zero());

        // {1}|{2,3,4} = Ψ − ψ_1 with ψ_1 = [{1,4}|{2,3}]
        let v = boundary_class(split(4, &[1]));
        let mut expected = H2Vector::psi(4);
        expected.add_split(split(4, &[1, 4]), &q(-1));
        assert_eq!(v, expected);

        assert_eq!(boundary_class(split(3, &[1])), H2Vector::psi(3));
    }

    #[test]
    fn psi_small_examples() {
        let v = psi_small(1, 3, 4, 4).unwrap();
        let mut expected = H2Vector::zero(4);
        expected.add_split(split(4, &[1, 2]), &q(1));
        assert_eq!(v, expected);

        assert!(psi_small(1, 2, 3, 3).unwrap().is_zero());

        let v = psi_small(1, 2, 3, 5).unwrap();
        let mut expected = H2Vector::zero(5);
        for a in [&[1, 4][..], &[1, 5], &[1, 4, 5]] {
            expected.add_split(split(5, a), &q(1));
        }
        assert_eq!(v, expected);

        assert!(psi_small(1, 1, 2, 4).is_err());
        assert!(psi_small(1, 2, 5, 4).is_err());
    }

    #[test]
    fn psi_big_reduces_to_psi() {
        for n in 3..=7u32 {
            let lattice = relation_lattice(n);
            for i in 1..=n {
                for j in 1..=n {
                    for k in j + 1..=n {
                        if i == j || i == k {
                            continue;
                        }
                        let v = psi_big(i, j, k, n).unwrap();
                        assert!(lattice.contains(&(&v - &H2Vector::psi(n))), "n={n} ({i},{j},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn psi_small_independent_of_reference_pair() {
        for n in 4..=7u32 {
            let lattice = relation_lattice(n);
            for i in 1..=n {
                let base = psi_canonical(i, n);
                for j in 1..=n {
                    for k in j + 1..=n {
                        if i == j || i == k {
                            continue;
                        }
                        let v = psi_small(i, j, k, n).unwrap();
                        assert!(lattice.contains(&(&v - &base)), "n={n} ψ_{i} via ({j},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        let d = |a: &[u32]| H2Vector::split(split(4, a)).unwrap();
        let all3 = &(&d(&[1, 2]) + &d(&[1, 3])) + &d(&[1, 4]);
        assert_eq!(delta_pq(4, 2, 2).unwrap(), all3.scaled(&q(2)));

        let mut expected = H2Vector::zero(4);
        for i in 1..=4 {
            expected.add_scaled(&boundary_class(split(4, &[i])), &q(1));
        }
        assert_eq!(delta_pq(4, 1, 3).unwrap(), expected);
        assert_eq!(delta_pq(4, 3, 1).unwrap(), expected);

        assert_eq!(delta_pq(3, 1, 2).unwrap(), H2Vector::psi(3).scaled(&q(3)));
        assert!(delta_pq(4, 1, 2).is_err());
        assert!(delta_pq(4, 0, 4).is_err());
    }

    #[test]
    fn delta_total_examples() {
        let by_def = {
            let mut v = H2Vector::zero(4);
            for p in 1..4 {
                v.add_scaled(&delta_pq(4, p, 4 - p).unwrap(), &frac(1, 2));
            }
            v
        };
        assert_eq!(delta_total(4).unwrap(), by_def);
        assert_eq!(delta_total(3).unwrap(), H2Vector::psi(3).scaled(&q(3)));
        // each unordered split, singletons included, enters with coefficient one
        for n in 3..=6 {
            let mut direct = H2Vector::zero(n);
            for s in MarkSplit::all(n) {
                direct.add_scaled(&boundary_class(s), &q(1));
            }
            assert_eq!(delta_total(n).unwrap(), direct);
        }
    }

    #[test]
    fn caustic_and_maxwell_small_n() {
        assert_eq!(caustic_class(3).unwrap(), H2Vector::psi(3).scaled(&q(3)));
        assert!(maxwell_class(3).unwrap().is_zero());
        let expected = &H2Vector::psi(4).scaled(&q(-12)) + &delta_total(4).unwrap().scaled(&q(4));
        assert_eq!(maxwell_class(4).unwrap(), expected);
    }

    #[test]
    fn symmetric_class_round_trip() {
        let c = SymmetricClass::caustic(5).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<SymmetricClass>(&s).unwrap(), c);
    }
}
