//! Small permutations in one-line notation and conjugacy-class generation.

use crate::combinatorics::Partition;

/// Largest degree the fixed-size permutation arrays support.
pub const MAX_DEGREE: usize = 12;

/// A permutation of `{0, …, n-1}` stored as its image list; entries past
/// `n` are fixed points and ignored by comparisons of degree-`n` data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        let mut img = [0u8; MAX_DEGREE];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm { n: n as u8, img }
    }

    pub fn from_images(images: &[u8]) -> Option<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return None;
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Perm::identity(n);
        for (i, &x) in images.iter().enumerate() {
            if x as usize >= n || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
            p.img[i] = x;
        }
        Some(p)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.n as usize]
    }

    /// `self` followed by `other`: `i ↦ other(self(i))`.
    #[inline]
    pub fn then(&self, other: &Perm) -> Perm {
        let mut out = *self;
        for i in 0..self.n as usize {
            out.img[i] = other.img[self.img[i] as usize];
        }
        out
    }

    #[inline]
    pub fn inverse(&self) -> Perm {
        let mut out = *self;
        for i in 0..self.n as usize {
            out.img[self.img[i] as usize] = i as u8;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.img[i] as usize == i)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<u32> {
        let n = self.n as usize;
        let mut seen = [false; MAX_DEGREE];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.img[i] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycle_lengths()).expect("cycle lengths are positive")
    }
}

/// Every permutation of degree `n` with the given cycle type.
///
/// Each permutation is produced once: the smallest unused point always opens
/// the next cycle, which then takes one of the remaining distinct lengths and
/// an ordered choice of further unused points.
pub fn conjugacy_class(cycle_type: &Partition, n: usize) -> Vec<Perm> {
    assert_eq!(cycle_type.degeneracy() as usize, n, "cycle type must partition n");
    let mut lengths: Vec<(u32, usize)> = Vec::new();
    for &k in cycle_type.parts() {
        match lengths.last_mut() {
            Some((len, count)) if *len == k => *count += 1,
            _ => lengths.push((k, 1)),
        }
    }
    let mut out = Vec::new();
    let mut used = [false; MAX_DEGREE];
    let mut perm = Perm::identity(n);
    fill(&mut lengths, &mut used, &mut perm, n, &mut out);
    out
}

fn fill(
    lengths: &mut [(u32, usize)],
    used: &mut [bool; MAX_DEGREE],
    perm: &mut Perm,
    n: usize,
    out: &mut Vec<Perm>,
) {
    let Some(start) = (0..n).find(|&i| !used[i]) else {
        out.push(*perm);
        return;
    };
    for li in 0..lengths.len() {
        if lengths[li].1 == 0 {
            continue;
        }
        let len = lengths[li].0 as usize;
        lengths[li].1 -= 1;
        used[start] = true;
        let mut cycle = vec![start];
        extend_cycle(&mut cycle, len, lengths, used, perm, n, out);
        used[start] = false;
        lengths[li].1 += 1;
    }
}

fn extend_cycle(
    cycle: &mut Vec<usize>,
    len: usize,
    lengths: &mut [(u32, usize)],
    used: &mut [bool; MAX_DEGREE],
    perm: &mut Perm,
    n: usize,
    out: &mut Vec<Perm>,
) {
    if cycle.len() == len {
        for w in 0..len {
            perm.img[cycle[w]] = cycle[(w + 1) % len] as u8;
        }
        fill(lengths, used, perm, n, out);
        for &i in cycle.iter() {
            perm.img[i] = i as u8;
        }
        return;
    }
    for next in 0..n {
        if used[next] {
            continue;
        }
        used[next] = true;
        cycle.push(next);
        extend_cycle(cycle, len, lengths, used, perm, n, out);
        cycle.pop();
        used[next] = false;
    }
}

/// `n! / ∏_k (k^{a_k} a_k!)`, the size of a conjugacy class.
pub fn class_size(cycle_type: &Partition) -> u128 {
    let n = cycle_type.degeneracy() as u128;
    let mut size: u128 = (1..=n).product();
    let mut counts = std::collections::BTreeMap::new();
    for &k in cycle_type.parts() {
        *counts.entry(k).or_insert(0u32) += 1;
    }
    for (k, a) in counts {
        size /= (k as u128).pow(a) * (1..=a as u128).product::<u128>();
    }
    size
}
