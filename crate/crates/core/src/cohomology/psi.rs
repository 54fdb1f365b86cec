//! Genus-zero ψ-integrals and the top power of `Ψ` on `ℙℋ_n`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, frac, q, Q};

fn check(exponents: &[u32]) -> Result<u32> {
    let n = exponents.len() as u32;
    if n < 3 {
        return Err(Error::refused(format!("ψ-integrals need at least 3 marks, got {n}")));
    }
    Ok(n)
}

/// `(n−3)! / ∏ k_i!` when `Σ k_i = n − 3`, else 0.
pub fn psi_integral_closed(exponents: &[u32]) -> Result<Q> {
    let n = check(exponents)?;
    let total: u32 = exponents.iter().sum();
    if total != n - 3 {
        return Ok(Q::zero());
    }
    let den = exponents
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, &k| acc * factorial(k as u64));
    Ok(Q::new(factorial((n - 3) as u64), den))
}

fn string_rec(mut k: Vec<u32>, memo: &mut HashMap<Vec<u32>, Q>) -> Q {
    let n = k.len();
    if k.iter().sum::<u32>() as usize + 3 != n {
        return Q::zero();
    }
    if n == 3 {
        return Q::one();
    }
    k.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(v) = memo.get(&k) {
        return v.clone();
    }
    // a degree count forces some k_i = 0; forget that mark
    let mut rest = k.clone();
    rest.pop();
    let mut total = Q::zero();
    for j in 0..rest.len() {
        if rest[j] > 0 {
            let mut lowered = rest.clone();
            lowered[j] -= 1;
            total += string_rec(lowered, memo);
        }
    }
    memo.insert(k, total.clone());
    total
}

/// The same integral by the string equation, down to `⟨τ_0³⟩ = 1`.
pub fn psi_integral_string(exponents: &[u32]) -> Result<Q> {
    check(exponents)?;
    static MEMO: OnceLock<Mutex<HashMap<Vec<u32>, Q>>> = OnceLock::new();
    let mut memo = MEMO.get_or_init(Default::default).lock().expect("ψ memo poisoned");
    Ok(string_rec(exponents.to_vec(), &mut memo))
}

/// `∫_{M̄_{0,n}} ψ_1^{k_1}⋯ψ_n^{k_n}`, computed both ways.
pub fn psi_integral(exponents: &[u32]) -> Result<Q> {
    let closed = psi_integral_closed(exponents)?;
    let rec = psi_integral_string(exponents)?;
    if closed != rec {
        return Err(Error::Inconsistent(format!(
            "ψ-integral {exponents:?}: closed form {closed} vs string equation {rec}"
        )));
    }
    Ok(closed)
}

/// Polynomial in `ψ_1..ψ_n`, truncated above `max_degree`.
type PsiPoly = BTreeMap<Vec<u32>, Q>;

fn elementary(n: usize, j: usize) -> Vec<Vec<u32>> {
    fn go(n: usize, j: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - j {
            cur[i] = 1;
            go(n, j - 1, i + 1, cur, out);
            cur[i] = 0;
        }
    }
    let mut out = Vec::new();
    go(n, j, 0, &mut vec![0; n], &mut out);
    out
}

fn add_times_elementary(target: &mut PsiPoly, p: &PsiPoly, e: &[Vec<u32>], sign: &Q, max_degree: u32) {
    for (mono, c) in p {
        let deg: u32 = mono.iter().sum();
        if deg + e.first().map_or(0, |m| m.iter().sum()) > max_degree {
            continue;
        }
        for sq in e {
            let prod: Vec<u32> = mono.iter().zip(sq).map(|(a, b)| a + b).collect();
            let slot = target.entry(prod).or_insert_with(Q::zero);
            *slot += c * sign;
        }
    }
    target.retain(|_, c| !c.is_zero());
}

/// `⟨[ℙℋ_n], Ψ^{2n−3}⟩`.
///
/// `ℙℋ_n` is the projectivization of `⊕ ℒ_i^∨ ⊕ 𝟙` over `M̄_{0,n}`, so
/// `Ψ^{n+1} = Σ_{j=1}^{n} (−1)^{j+1} e_j(ψ) Ψ^{n+1−j}`. Reducing `Ψ^{2n−3}`
/// to `Ψ`-degree at most `n` leaves the fibre integral as the coefficient of
/// `Ψ^n`, a ψ-polynomial of degree `n−3` integrated over the base. `n = 2` is
/// the orbifold point with value `1/2`.
pub fn top_psi_power(n: u32) -> Result<Q> {
    if n < 2 {
        return Err(Error::invalid(format!("top Ψ power needs n >= 2, got {n}")));
    }
    if n == 2 {
        return Ok(frac(1, 2));
    }
    let nn = n as usize;
    let top = 2 * nn - 3;
    let max_degree = n - 3;
    let e: Vec<Vec<Vec<u32>>> = (0..=nn).map(|j| elementary(nn, j)).collect();

    let mut coeffs: Vec<PsiPoly> = vec![PsiPoly::new(); top + 1];
    coeffs[top].insert(vec![0; nn], Q::one());
    for j in (nn + 1..=top).rev() {
        let c = std::mem::take(&mut coeffs[j]);
        for i in 1..=nn {
            let sign = if i % 2 == 1 { q(1) } else { q(-1) };
            add_times_elementary(&mut coeffs[j - i], &c, &e[i], &sign, max_degree);
        }
    }
    let mut total = Q::zero();
    for (mono, c) in &coeffs[nn] {
        total += c * psi_integral(mono)?;
    }
    Ok(total)
}

/// Cross-check: the fibre integral of `Ψ^{2n−3}` is the Segre class of the
/// bundle, `Σ_{|k|=n−3} ∫ ψ^k`.
pub fn top_psi_power_segre(n: u32) -> Result<Q> {
    if n < 2 {
        return Err(Error::invalid(format!("top Ψ power needs n >= 2, got {n}")));
    }
    if n == 2 {
        return Ok(frac(1, 2));
    }
    let mut total = Q::zero();
    for k in compositions(n - 3, n as usize) {
        total += psi_integral(&k)?;
    }
    Ok(total)
}

/// All `k ∈ ℕ^parts` with `Σ k = total`.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(left: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            go(left - v, i + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, 0, &mut vec![0; parts], &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn integral_examples() {
        assert_eq!(psi_integral(&[0, 0, 0]).unwrap(), q(1));
        assert_eq!(psi_integral(&[1, 0, 0, 0]).unwrap(), q(1));
        assert_eq!(psi_integral(&[1, 1, 0, 0, 0]).unwrap(), q(2));
        assert_eq!(psi_integral(&[2, 0, 0, 0, 0]).unwrap(), q(1));
        assert_eq!(psi_integral(&[1, 0, 0, 0, 0]).unwrap(), q(0));
        assert!(psi_integral(&[0, 0]).is_err());
    }

    #[test]
    fn routes_agree_exhaustively() {
        for n in 3..=8u32 {
            for d in 0..=n {
                for k in compositions(d, n as usize) {
                    assert_eq!(psi_integral_string(&k).unwrap(), psi_integral_closed(&k).unwrap(), "{k:?}");
                }
            }
        }
    }

    #[test]
    fn top_power_examples() {
        assert_eq!(top_psi_power(2).unwrap(), frac(1, 2));
        assert_eq!(top_psi_power(3).unwrap(), q(1));
        assert_eq!(top_psi_power(4).unwrap(), q(4));
    }

    #[test]
    fn both_routes_give_n_to_the_n_minus_3() {
        for n in 3..=8u32 {
            let expected = Q::from_integer(num_bigint::BigInt::from(n).pow(n - 3));
            assert_eq!(top_psi_power(n).unwrap(), expected, "reduction n={n}");
            assert_eq!(top_psi_power_segre(n).unwrap(), expected, "segre n={n}");
        }
    }

    #[test]
    fn elementary_counts() {
        assert_eq!(elementary(5, 2).len(), 10);
        assert_eq!(elementary(4, 0), vec![vec![0; 4]]);
    }
}
