use super::perm::Permutation;
use crate::error::{invalid, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so block labels are stable
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

fn check_degrees(gens: &[Permutation], n: usize) -> Result<()> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(invalid!("generator {g} has degree {}, expected {n}", g.degree()));
    }
    Ok(())
}

pub(crate) fn orbit_count(gens: &[&[usize]], n: usize) -> usize {
    let mut uf = UnionFind::new(n);
    let mut classes = n;
    for g in gens {
        for (i, &x) in g.iter().enumerate() {
            if uf.union(i, x) {
                classes -= 1;
            }
        }
    }
    classes
}

/// Orbit partition of `<gens>` on `0..n`, each block sorted, blocks ordered by least element.
pub fn orbits(gens: &[Permutation], n: usize) -> Result<Vec<Vec<usize>>> {
    check_degrees(gens, n)?;
    let mut uf = UnionFind::new(n);
    for g in gens {
        for (i, &x) in g.images().iter().enumerate() {
            uf.union(i, x);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let r = uf.find(i);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index_of_root[r]].push(i);
    }
    Ok(blocks)
}

pub fn is_transitive(gens: &[Permutation], n: usize) -> Result<bool> {
    check_degrees(gens, n)?;
    let slices: Vec<&[usize]> = gens.iter().map(Permutation::images).collect();
    Ok(orbit_count(&slices, n) == 1)
}

/// Smallest `<gens>`-invariant equivalence relation joining `a` and `b`.
/// Returns the number of classes.
fn minimal_block_classes(gens: &[&[usize]], n: usize, a: usize, b: usize) -> usize {
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut classes = n - 1;
    let mut pending = vec![(a, b)];
    while let Some((x, y)) = pending.pop() {
        for g in gens {
            let (gx, gy) = (g[x], g[y]);
            if uf.union(gx, gy) {
                classes -= 1;
                if classes == 1 {
                    return 1;
                }
                pending.push((gx, gy));
            }
        }
    }
    classes
}

/// Primitivity of a group already known to be transitive, `n >= 2`.
pub(crate) fn is_primitive_transitive(gens: &[&[usize]], n: usize) -> bool {
    (1..n).all(|i| minimal_block_classes(gens, n, 0, i) == 1)
}

/// True iff the transitive group `<gens>` preserves no block system other
/// than the trivial ones. Errors on intransitive input or `n < 2`.
pub fn is_primitive(gens: &[Permutation], n: usize) -> Result<bool> {
    if n < 2 {
        return Err(invalid!("primitivity needs degree >= 2"));
    }
    if !is_transitive(gens, n)? {
        return Err(invalid!("is_primitive: group is not transitive"));
    }
    let slices: Vec<&[usize]> = gens.iter().map(Permutation::images).collect();
    let primitive = is_primitive_transitive(&slices, n);
    debug_assert!(
        primitive || !crate::numth::is_prime(n as u64),
        "transitive group of prime degree must be primitive"
    );
    Ok(primitive)
}
