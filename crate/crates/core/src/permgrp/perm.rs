use std::fmt;

use crate::error::{invalid, Result};

/// A bijection of `{0, ..., n-1}` in one-line notation: `p.apply(i) == images[i]`.
///
/// Products are function composition, `p.compose(&q)` is `i -> p(q(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(invalid!("permutation degree must be >= 1"));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(invalid!("{images:?} is not a permutation of 0..{n}"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles, e.g.
    /// `from_cycles(4, &[&[0, 1, 2, 3]])`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(invalid!("bad cycle {cycle:?} for degree {n}"));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: compose_slices(&self.images, &other.images),
        }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            images: invert_slice(&self.images),
        }
    }

    /// `self^k`; negative exponents are powers of the inverse.
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        result
    }

    /// Number of fixed points.
    pub fn fix_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i == x).count()
    }

    /// Cycles including fixed points, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.images)
    }

    /// Sorted cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn compose_slices(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

pub(crate) fn invert_slice(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub(crate) fn pow_slice(p: &[usize], k: i64) -> Vec<usize> {
    let n = p.len();
    let base = if k < 0 { invert_slice(p) } else { p.to_vec() };
    let e = k.unsigned_abs();
    // walk each cycle once instead of repeated squaring
    let mut out = vec![0; n];
    let mut done = vec![false; n];
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut cycle = vec![start];
        done[start] = true;
        let mut x = base[start];
        while x != start {
            done[x] = true;
            cycle.push(x);
            x = base[x];
        }
        let len = cycle.len() as u64;
        let shift = (e % len) as usize;
        for (i, &c) in cycle.iter().enumerate() {
            out[c] = cycle[(i + shift) % cycle.len()];
        }
    }
    out
}

pub(crate) fn cycles_of(p: &[usize]) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push(cycle);
    }
    out
}

/// All `n!` permutations of degree `n`, in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Calls `visit` once for every `σ ∈ Sym(n)` with `σ^m = 1`.
///
/// Each permutation is built by repeatedly closing a cycle of length `d | m`
/// through the smallest unassigned point, so no permutation appears twice.
pub fn visit_order_dividing<F: FnMut(&[usize])>(m: u64, n: usize, mut visit: F) {
    let lengths: Vec<usize> = (1..=m.min(n.max(1) as u64))
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| d as usize)
        .collect();
    let mut images = vec![usize::MAX; n];
    let mut free = vec![true; n];
    fill(&lengths, &mut images, &mut free, n, &mut visit);
}

fn fill<F: FnMut(&[usize])>(
    lengths: &[usize],
    images: &mut [usize],
    free: &mut [bool],
    remaining: usize,
    visit: &mut F,
) {
    let Some(start) = free.iter().position(|&f| f) else {
        visit(images);
        return;
    };
    free[start] = false;
    let mut cycle = vec![start];
    for &d in lengths.iter().filter(|&&d| d <= remaining) {
        extend_cycle(lengths, images, free, remaining, &mut cycle, d, visit);
    }
    free[start] = true;
}

fn extend_cycle<F: FnMut(&[usize])>(
    lengths: &[usize],
    images: &mut [usize],
    free: &mut [bool],
    remaining: usize,
    cycle: &mut Vec<usize>,
    d: usize,
    visit: &mut F,
) {
    if cycle.len() == d {
        for i in 0..d {
            images[cycle[i]] = cycle[(i + 1) % d];
        }
        fill(lengths, images, free, remaining - d, visit);
        for &c in cycle.iter() {
            images[c] = usize::MAX;
        }
        return;
    }
    for x in 0..images.len() {
        if free[x] {
            free[x] = false;
            cycle.push(x);
            extend_cycle(lengths, images, free, remaining, cycle, d, visit);
            cycle.pop();
            free[x] = true;
        }
    }
}

/// Every permutation of degree `n` whose order divides `m`.
pub fn enumerate_order_dividing(m: u64, n: usize) -> Result<Vec<Permutation>> {
    if m == 0 || n == 0 {
        return Err(invalid!("enumerate_order_dividing needs m, n >= 1"));
    }
    if n > super::ENUMERATION_MAX_DEGREE {
        return Err(invalid!(
            "full enumeration is capped at degree {}",
            super::ENUMERATION_MAX_DEGREE
        ));
    }
    let mut out = Vec::new();
    visit_order_dividing(m, n, |p| out.push(Permutation::from_vec_unchecked(p.to_vec())));
    Ok(out)
}
