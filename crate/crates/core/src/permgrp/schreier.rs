//! Group orders by a Schreier–Sims stabiliser chain over the fixed base
//! `0, 1, ..., n-1` (Knuth's "Sims table" formulation).

use num_bigint::BigUint;
use num_traits::One;

use super::action::orbit_count;
use super::perm::{compose_slices, invert_slice, Permutation};
use crate::error::{invalid, Result};
use crate::numth::factorial;

type Perm = Vec<usize>;

/// Level `k` holds, for each point `j` in the orbit of `k` under the
/// pointwise stabiliser of `0..k`, an element mapping `k -> j` and its inverse.
struct SimsTable {
    n: usize,
    gens: Vec<Vec<Perm>>,
    table: Vec<Vec<Option<(Perm, Perm)>>>,
}

impl SimsTable {
    fn new(n: usize) -> Self {
        let identity: Perm = (0..n).collect();
        let table = (0..n)
            .map(|k| {
                let mut row = vec![None; n];
                row[k] = Some((identity.clone(), identity.clone()));
                row
            })
            .collect();
        SimsTable {
            n,
            gens: vec![Vec::new(); n],
            table,
        }
    }

    /// Strips `h` through levels `start..`; returns the first level where
    /// it falls out of the table, with the partial residue.
    fn sift(&self, mut h: Perm, start: usize) -> Option<(usize, Perm)> {
        for k in start..self.n {
            let j = h[k];
            if j == k {
                continue;
            }
            match &self.table[k][j] {
                Some((_, inv)) => h = compose_slices(inv, &h),
                None => return Some((k, h)),
            }
        }
        None
    }

    /// `g` fixes `0..start`.
    fn insert(&mut self, g: Perm, start: usize) {
        let Some((level, h)) = self.sift(g, start) else { return };
        self.gens[level].push(h.clone());
        for l in start..=level {
            let entries: Vec<Perm> = self.table[l].iter().flatten().map(|(t, _)| t.clone()).collect();
            for t in entries {
                self.update(l, compose_slices(&h, &t));
            }
        }
    }

    /// `p` fixes `0..level`.
    fn update(&mut self, level: usize, p: Perm) {
        let j = p[level];
        match &self.table[level][j] {
            Some((_, inv)) => {
                let residue = compose_slices(inv, &p);
                self.insert(residue, level + 1);
            }
            None => {
                let inv = invert_slice(&p);
                self.table[level][j] = Some((p.clone(), inv));
                let gens: Vec<Perm> = self.gens[level..].iter().flatten().cloned().collect();
                for s in gens {
                    self.update(level, compose_slices(&s, &p));
                }
            }
        }
    }

    fn order(&self) -> BigUint {
        self.table
            .iter()
            .map(|row| row.iter().filter(|e| e.is_some()).count())
            .fold(BigUint::one(), |acc, k| acc * k)
    }
}

/// Exact order of `<gens>` acting on `0..n`. Practical up to degree ~20.
pub fn group_order(gens: &[Permutation], n: usize) -> Result<BigUint> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(invalid!("generator {g} has degree {}, expected {n}", g.degree()));
    }
    let mut chain = SimsTable::new(n);
    for g in gens {
        chain.insert(g.images().to_vec(), 0);
    }
    Ok(chain.order())
}

/// Whether `<gens>` is `Alt(n)` or `Sym(n)`.
pub fn is_alt_or_sym(gens: &[Permutation], n: usize) -> Result<bool> {
    if n < 3 {
        return Err(invalid!("is_alt_or_sym needs n >= 3, got {n}"));
    }
    let slices: Vec<&[usize]> = gens.iter().map(Permutation::images).collect();
    if gens.iter().all(|g| g.degree() == n) && orbit_count(&slices, n) != 1 {
        return Ok(false);
    }
    let order = group_order(gens, n)?;
    let full = factorial(n as u64);
    Ok(order == full || order * 2u32 == full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::perm::all_permutations;
    use std::collections::HashSet;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn closure_order(gens: &[Permutation], n: usize) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut frontier = vec![Permutation::identity(n)];
        seen.insert(Permutation::identity(n));
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn order_examples() {
        assert_eq!(
            group_order(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])], 3).unwrap(),
            BigUint::from(6u32)
        );
        assert_eq!(group_order(&[Permutation::identity(4)], 4).unwrap(), BigUint::one());
        assert_eq!(group_order(&[], 4).unwrap(), BigUint::one());
        assert_eq!(group_order(&[cyc(3, &[&[0, 1, 2]])], 3).unwrap(), BigUint::from(3u32));
        assert!(group_order(&[cyc(3, &[&[0, 1, 2]])], 4).is_err());
    }

    #[test]
    fn known_large_orders() {
        for n in [5usize, 10, 20] {
            let cycle: Vec<usize> = (0..n).collect();
            let sym = [cyc(n, &[&[0, 1]]), cyc(n, &[&cycle])];
            assert_eq!(group_order(&sym, n).unwrap(), factorial(n as u64));
        }
        // Alt(n) from the 3-cycles (0 1 k)
        for n in [6usize, 11, 16] {
            let gens: Vec<Permutation> = (2..n).map(|k| cyc(n, &[&[0, 1, k]])).collect();
            assert_eq!(group_order(&gens, n).unwrap() * 2u32, factorial(n as u64));
        }
        // Mathieu group M11 on 11 points
        let a = cyc(11, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]]);
        let b = cyc(11, &[&[2, 6, 10, 7], &[3, 9, 4, 5]]);
        assert_eq!(group_order(&[a, b], 11).unwrap(), BigUint::from(7920u32));
        // cyclic and dihedral
        let r = cyc(12, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]);
        assert_eq!(group_order(std::slice::from_ref(&r), 12).unwrap(), BigUint::from(12u32));
        let s = cyc(12, &[&[1, 11], &[2, 10], &[3, 9], &[4, 8], &[5, 7]]);
        assert_eq!(group_order(&[r, s], 12).unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn order_matches_closure_on_small_degrees() {
        for n in 1..=5 {
            let perms = all_permutations(n);
            for (i, x) in perms.iter().enumerate() {
                for y in perms.iter().skip(i % 7).step_by(7) {
                    let gens = [x.clone(), y.clone()];
                    assert_eq!(
                        group_order(&gens, n).unwrap(),
                        BigUint::from(closure_order(&gens, n)),
                        "{x} {y}"
                    );
                }
            }
        }
        let gens = [cyc(6, &[&[0, 1], &[2, 3]]), cyc(6, &[&[1, 2, 4]]), cyc(6, &[&[3, 5]])];
        assert_eq!(group_order(&gens, 6).unwrap(), BigUint::from(closure_order(&gens, 6)));
    }

    #[test]
    fn alt_or_sym_examples() {
        assert!(is_alt_or_sym(&[cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])], 4).unwrap());
        assert!(!is_alt_or_sym(&[cyc(4, &[&[0, 1, 2, 3]])], 4).unwrap());
        assert!(is_alt_or_sym(&[cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])], 4).unwrap());
        assert!(is_alt_or_sym(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])], 3).unwrap());
        assert!(is_alt_or_sym(&[cyc(2, &[&[0, 1]])], 2).is_err());
    }
}
