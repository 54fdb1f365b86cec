use rayon::prelude::*;

use super::perm::{class_size, conjugacy_class, Perm};
use crate::combinatorics::{Partition, RamificationProfile};
use crate::error::{Error, Result};

/// Factor order used by the enumerator: the largest class goes last, since its
/// member is solved for instead of looped over. The count is invariant under
/// reordering the factors.
fn factor_order(profile: &RamificationProfile) -> Vec<Partition> {
    let mut cycle_types = profile.cycle_types();
    if let Some((last, _)) = cycle_types
        .iter()
        .enumerate()
        .max_by_key(|(i, ct)| (class_size(ct), usize::MAX - i))
    {
        let ct = cycle_types.remove(last);
        cycle_types.push(ct);
    }
    cycle_types
}

/// Number of tuples the enumerator visits at its deepest level.
pub fn work_estimate(profile: &RamificationProfile) -> u128 {
    let order = factor_order(profile);
    order[..order.len() - 1]
        .iter()
        .fold(1u128, |acc, ct| acc.saturating_mul(class_size(ct)))
}

/// Raw tuple count by direct enumeration. Parallel over the first factor; the
/// per-chunk integer counts are summed, so the result does not depend on the
/// number of threads.
pub fn count_by_enumeration(profile: &RamificationProfile, threads: Option<usize>) -> Result<u128> {
    let n = profile.n() as usize;
    let order = factor_order(profile);
    log::info!(
        "enumerating {} (n={n}): about {} tuples",
        profile,
        work_estimate(profile)
    );
    let classes: Vec<Vec<Perm>> = order.iter().map(|ct| conjugacy_class(ct, n)).collect();
    let last_type = order.last().expect("profiles are nonempty").clone();

    if classes.len() == 1 {
        let id = Perm::identity(n);
        let ok = id.cycle_type() == last_type && transitive(n, &[id]);
        return Ok(ok as u128);
    }

    let job = || {
        classes[0]
            .par_iter()
            .map(|first| {
                let mut stack = vec![*first];
                descend(n, &classes, &last_type, *first, &mut stack)
            })
            .sum::<u128>()
    };
    match threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
        None => Ok(job()),
    }
}

fn descend(
    n: usize,
    classes: &[Vec<Perm>],
    last_type: &Partition,
    prefix: Perm,
    stack: &mut Vec<Perm>,
) -> u128 {
    let depth = stack.len();
    if depth == classes.len() - 1 {
        let last = prefix.inverse();
        if last.cycle_type() != *last_type {
            return 0;
        }
        stack.push(last);
        let ok = transitive(n, stack);
        stack.pop();
        return ok as u128;
    }
    let mut total = 0;
    for sigma in &classes[depth] {
        stack.push(*sigma);
        total += descend(n, classes, last_type, prefix.then(sigma), stack);
        stack.pop();
    }
    total
}

/// Union-find over the cycles of all factors: one orbit means transitive.
pub(crate) fn transitive(n: usize, perms: &[Perm]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for p in perms {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, p.apply(i)));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components == 1
}
