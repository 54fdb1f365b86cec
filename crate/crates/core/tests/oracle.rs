use proptest::prelude::*;

use hurwitz_core::closed_forms::{bridge, closed_form_for};
use hurwitz_core::cohomology::top_psi_power;
use hurwitz_core::combinatorics::partitions_of;
use hurwitz_core::exact::{factorial_q, q};
use hurwitz_core::monodromy::{count_factorizations, Method, OracleConfig};
use hurwitz_core::{Partition, RamificationProfile};

/// Balanced profiles of degree `n` built from ramification types of degeneracy ≤ 3.
fn balanced_profiles(n: u32) -> Vec<RamificationProfile> {
    let kinds: Vec<Partition> = (1..=3.min(n - 1)).flat_map(partitions_of).collect();
    let mut out = Vec::new();
    fn go(kinds: &[Partition], start: usize, left: u32, n: u32, cur: &mut Vec<Partition>, out: &mut Vec<RamificationProfile>) {
        if left == 0 {
            if let Ok(p) = RamificationProfile::new(n, cur.clone()) {
                out.push(p);
            }
            return;
        }
        for i in start..kinds.len() {
            let d = kinds[i].degeneracy();
            if d <= left && kinds[i].parts().iter().map(|k| k + 1).sum::<u32>() <= n {
                cur.push(kinds[i].clone());
                go(kinds, i, left - d, n, cur, out);
                cur.pop();
            }
        }
    }
    go(&kinds, 0, 2 * n - 2, n, &mut Vec::new(), &mut out);
    out
}

fn count(p: &RamificationProfile, method: Method) -> hurwitz_core::exact::Q {
    count_factorizations(p, &OracleConfig::with_method(method)).unwrap().hurwitz_number
}

#[test]
fn methods_agree_on_every_small_profile() {
    let mut seen = 0;
    for n in 2..=5 {
        for p in balanced_profiles(n) {
            assert_eq!(count(&p, Method::Enumerate), count(&p, Method::Transfer), "{p}");
            if let Some((_, value)) = closed_form_for(&p) {
                assert_eq!(count(&p, Method::Transfer), value, "{p}");
            }
            seen += 1;
        }
    }
    assert!(seen > 20);
}

#[test]
fn all_simple_bridge_matches_top_psi_power() {
    for n in 2..=6u32 {
        let p = RamificationProfile::all_simple(n).unwrap();
        let h = count(&p, Method::Transfer);
        let b = bridge(&p, &h).unwrap();
        assert_eq!(b.mu, h.clone() * factorial_q(n as u64));
        assert_eq!(h * factorial_q(n as u64) / factorial_q(2 * n as u64 - 2), top_psi_power(n).unwrap());
    }
}

#[test]
fn unbalanced_profiles_count_zero() {
    let p = RamificationProfile::relaxed(4, vec![Partition::new(vec![1]).unwrap(); 5]).unwrap();
    assert_eq!(count(&p, Method::Enumerate), q(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn count_ignores_order_of_critical_values(n in 3u32..=5, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let all = balanced_profiles(n);
        let p = &all[pick.index(all.len())];
        let mut types = p.types().to_vec();
        // deterministic shuffle
        let len = types.len();
        for i in (1..len).rev() {
            types.swap(i, (seed.rotate_left(i as u32) as usize) % (i + 1));
        }
        let shuffled = RamificationProfile::new(n, types).unwrap();
        prop_assert_eq!(count(p, Method::Transfer), count(&shuffled, Method::Enumerate));
    }
}
