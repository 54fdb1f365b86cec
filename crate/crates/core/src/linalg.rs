//! Exact linear algebra over ℚ: fraction-free row echelon forms for rank and
//! span membership, Bareiss determinants, and a small rational solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Q;

/// Clears denominators and content: a primitive integer vector spanning the same line.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    normalize(ints)
}

fn normalize(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Incrementally built echelon basis of a row space. Each stored row is
/// primitive and vanishes on the pivots of the rows stored before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a Vec<Q>>) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_int(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let a = &row[p];
            let b = v[p].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (a / &g, &b / &g);
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &fa - r * &fb;
            }
            v = normalize(v);
        }
        v
    }

    /// Residual of `v` after elimination against the basis (a scalar multiple
    /// of the true residual); zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Q]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        self.reduce_int(primitive(v))
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let r = if r[p].is_negative() { r.into_iter().map(|x| -x).collect() } else { r };
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    Echelon::from_rows(ncols, rows).rank()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "square matrix expected");
    // scale rows to integers, remembering the scale
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Q::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Q::new(sign * &a[n - 1][n - 1], scale)
}

/// One exact solution `x` of `Σ_j x_j · columns[j] = target`, free variables
/// set to zero; `None` if the system is inconsistent.
pub fn solve(columns: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let nrows = target.len();
    let ncols = columns.len();
    let mut m: Vec<Vec<Q>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=ncols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}
