use std::collections::HashMap;

use super::perm::{conjugacy_class, Perm, MAX_DEGREE};
use crate::combinatorics::RamificationProfile;

/// Orbit partition of `{0..n-1}` with canonical labels (first occurrence order).
type Blocks = [u8; MAX_DEGREE];

fn merge(n: usize, blocks: &Blocks, sigma: &Perm) -> Blocks {
    let mut parent: [u8; MAX_DEGREE] = [0; MAX_DEGREE];
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i as u8;
    }
    fn find(parent: &mut [u8; MAX_DEGREE], mut x: u8) -> u8 {
        while parent[x as usize] != x {
            x = parent[x as usize];
        }
        x
    }
    for i in 0..n {
        let a = find(&mut parent, blocks[i]);
        let b = find(&mut parent, blocks[sigma.apply(i)]);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi as usize] = lo;
        }
    }
    let mut relabel = [u8::MAX; MAX_DEGREE];
    let mut next = 0u8;
    let mut out = [0u8; MAX_DEGREE];
    for i in 0..n {
        let root = find(&mut parent, blocks[i]) as usize;
        if relabel[root] == u8::MAX {
            relabel[root] = next;
            next += 1;
        }
        out[i] = relabel[root];
    }
    out
}

fn single_block(n: usize, blocks: &Blocks) -> bool {
    blocks[..n].iter().all(|&b| b == 0)
}

/// Raw tuple count by dynamic programming over the states
/// (partial product, orbit partition generated so far).
///
/// Counts exactly the same tuple set as the enumerator and serves as its
/// independent cross-check; it reaches larger profiles because states collapse.
pub fn count_by_transfer(profile: &RamificationProfile) -> u128 {
    let n = profile.n() as usize;
    let cycle_types = profile.cycle_types();
    let (last_type, rest) = cycle_types.split_last().expect("profiles are nonempty");

    let mut start: Blocks = [0; MAX_DEGREE];
    for (i, b) in start.iter_mut().enumerate().take(n) {
        *b = i as u8;
    }
    let mut states: HashMap<(Perm, Blocks), u128> = HashMap::new();
    states.insert((Perm::identity(n), start), 1);

    for ct in rest {
        let class = conjugacy_class(ct, n);
        let mut next: HashMap<(Perm, Blocks), u128> = HashMap::with_capacity(states.len() * 2);
        for ((prod, blocks), count) in &states {
            for sigma in &class {
                let key = (prod.then(sigma), merge(n, blocks, sigma));
                *next.entry(key).or_insert(0) += count;
            }
        }
        states = next;
    }

    states
        .iter()
        .filter_map(|((prod, blocks), count)| {
            let last = prod.inverse();
            (last.cycle_type() == *last_type && single_block(n, &merge(n, blocks, &last)))
                .then_some(*count)
        })
        .sum()
}
