use super::poly::{Poly, Ring};
use crate::error::{Error, Result};
use crate::exact::Q;
use crate::linalg;

/// Resultant by the subresultant PRS; exact over any [`Ring`].
pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Result<R> {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(Error::refused("resultant of the zero polynomial"));
    };
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = R::one();
    if df < dg {
        std::mem::swap(&mut a, &mut b);
        if df % 2 == 1 && dg % 2 == 1 {
            s = s.neg();
        }
    }
    if b.degree() == Some(0) {
        return Ok(s.mul(&b.lc().pow(a.degree().unwrap())));
    }
    let (mut g_, mut h) = (R::one(), R::one());
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg();
        }
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.div_scalar(&g_.mul(&h.pow(delta)));
        g_ = a.lc();
        h = if delta == 0 {
            h
        } else {
            g_.pow(delta).div_exact(&h.pow(delta - 1))
        };
        match b.degree() {
            None => return Ok(R::zero()),
            Some(0) => {
                let da = a.degree().unwrap();
                let v = b.lc().pow(da).div_exact(&h.pow(da - 1));
                return Ok(s.mul(&v));
            }
            Some(_) => {}
        }
    }
}

/// `disc(f) = (−1)^{d(d−1)/2} res(f, f′) / lc(f)` for `deg f = d ≥ 2`.
pub fn discriminant_z<R: Ring>(f: &Poly<R>) -> Result<R> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::refused(format!("discriminant needs degree >= 2, got {d}")));
    }
    let r = resultant(f, &f.derivative())?.div_exact(&f.lc());
    Ok(if (d * (d - 1) / 2) % 2 == 1 { r.neg() } else { r })
}

/// The Sylvester matrix determinant, as an independent check over `ℚ`.
pub fn sylvester_resultant(f: &Poly<Q>, g: &Poly<Q>) -> Result<Q> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::refused("resultant of the zero polynomial"));
    };
    let size = m + n;
    if size == 0 {
        return Ok(<Q as Ring>::one());
    }
    let mut rows = Vec::with_capacity(size);
    for (p, count) in [(f, n), (g, m)] {
        let deg = p.degree().unwrap();
        for shift in 0..count {
            let mut row = vec![<Q as Ring>::zero(); size];
            for k in 0..=deg {
                row[shift + deg - k] = p.coeff(k);
            }
            rows.push(row);
        }
    }
    Ok(linalg::determinant(&rows))
}

#[cfg(test)]
mod tests {
    use super::super::poly::qpoly;
    use super::*;
    use crate::exact::q;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(resultant(&qpoly(&[-1, 0, 1]), &qpoly(&[-1, 1])).unwrap(), q(0));
        assert_eq!(resultant(&qpoly(&[1, 0, 1]), &qpoly(&[-1, 1])).unwrap(), q(2));
        assert!(resultant(&Poly::<Q>::zero(), &qpoly(&[1, 1])).is_err());
        assert_eq!(discriminant_z(&qpoly(&[3, 5, 1])).unwrap(), q(25 - 12));
        assert!(discriminant_z(&qpoly(&[3, 5])).is_err());
    }

    #[test]
    fn parametric_quadratic_and_cubic() {
        // z² + t z + 1 → t² − 4
        let t = qpoly(&[0, 1]);
        let one = qpoly(&[1]);
        let f = Poly::new(vec![one.clone(), t.clone(), one.clone()]);
        assert_eq!(discriminant_z(&f).unwrap(), qpoly(&[-4, 0, 1]));
        // z³ + t z + 1 → −4t³ − 27
        let f = Poly::new(vec![one.clone(), t, Poly::zero(), one]);
        assert_eq!(discriminant_z(&f).unwrap(), qpoly(&[-27, 0, 0, -4]));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly<Q>> {
        (1..=max_deg)
            .prop_flat_map(|d| (prop::collection::vec(-9i64..=9, d), 1i64..=9))
            .prop_map(|(mut c, lead)| {
                c.push(lead);
                qpoly(&c)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn swap_sign_twist(f in arb_poly(6), g in arb_poly(6)) {
            let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
            let sign = if (m * n) % 2 == 1 { q(-1) } else { q(1) };
            prop_assert_eq!(resultant(&f, &g).unwrap(), sign * resultant(&g, &f).unwrap());
        }

        #[test]
        fn subresultant_matches_sylvester(f in arb_poly(6), g in arb_poly(6)) {
            prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g).unwrap());
            if f.degree().unwrap() >= 2 {
                let d = f.degree().unwrap();
                let syl = sylvester_resultant(&f, &f.derivative()).unwrap() / f.lc();
                let syl = if (d * (d - 1) / 2) % 2 == 1 { -syl } else { syl };
                prop_assert_eq!(discriminant_z(&f).unwrap(), syl);
            }
        }

        #[test]
        fn vanishes_iff_repeated_root(base in arb_poly(4), r in -5i64..=5, plant in any::<bool>()) {
            let f = if plant { &base * &qpoly(&[-r, 1]).pow(2) } else { &base * &qpoly(&[-r, 1]) };
            let disc = discriminant_z(&f).unwrap();
            let repeated = f.gcd(&f.derivative()).degree().unwrap() > 0;
            prop_assert_eq!(<Q as Ring>::is_zero(&disc), repeated);
            if plant { prop_assert!(repeated); }
        }
    }
}
