use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::action::{is_primitive_transitive, orbit_count};
use super::perm::{all_permutations, cycles_of, pow_slice, visit_order_dividing, Permutation};
use crate::error::{inconsistent, invalid, Result};
use crate::growth::BsParams;
use crate::numth::factorial;

/// Largest degree the exhaustive oracle accepts.
pub const ORACLE_MAX_DEGREE: usize = 7;

/// Exact representation counts in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCounts {
    pub n: usize,
    /// `|Hom(G, Sym(n))|`
    pub total: BigUint,
    /// transitive homomorphisms
    pub transitive: BigUint,
    /// primitive homomorphisms (zero at `n = 1`)
    pub primitive: BigUint,
    /// index-n subgroups, `transitive / (n-1)!`
    pub subgroups: BigUint,
    /// maximal index-n subgroups, `primitive / (n-1)!`
    pub maximal: BigUint,
}

#[derive(Clone, Copy, Default, Debug)]
struct Tally {
    total: u64,
    transitive: u64,
    primitive: u64,
}

impl Tally {
    fn record(&mut self, x: &[usize], y: &[usize]) {
        let n = x.len();
        self.total += 1;
        let gens = [x, y];
        if orbit_count(&gens, n) == 1 {
            self.transitive += 1;
            if n >= 2 && is_primitive_transitive(&gens, n) {
                self.primitive += 1;
            }
        }
    }

    fn merge(self, other: Tally) -> Tally {
        Tally {
            total: self.total + other.total,
            transitive: self.transitive + other.transitive,
            primitive: self.primitive + other.primitive,
        }
    }
}

impl OracleCounts {
    fn from_tally(n: usize, tally: Tally) -> Result<Self> {
        let fact = factorial(n as u64 - 1);
        let transitive = BigUint::from(tally.transitive);
        let primitive = BigUint::from(tally.primitive);
        let (subgroups, r1) = transitive.div_rem(&fact);
        let (maximal, r2) = primitive.div_rem(&fact);
        if !r1.is_zero() || !r2.is_zero() {
            return Err(inconsistent!(
                "degree {n}: (n-1)! does not divide transitive={transitive} / primitive={primitive}"
            ));
        }
        let counts = OracleCounts {
            n,
            total: BigUint::from(tally.total),
            transitive,
            primitive,
            subgroups,
            maximal,
        };
        if !(counts.primitive <= counts.transitive && counts.transitive <= counts.total) {
            return Err(inconsistent!("degree {n}: counts not nested: {counts:?}"));
        }
        Ok(counts)
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > ORACLE_MAX_DEGREE {
        return Err(invalid!("oracle degree must be in 1..={ORACLE_MAX_DEGREE}, got {n}"));
    }
    Ok(())
}

/// Calls `visit(τ)` for every `τ` with `τ⁻¹ ρ τ = ρ'`, i.e. `ρ ∘ τ = τ ∘ ρ'`.
///
/// Such a `τ` carries each cycle `(c, ρ'c, ρ'²c, ...)` of `ρ'` onto a cycle of
/// `ρ` of the same length, in order; the choices are which target cycle and
/// where on it `c` lands. When the cycle types agree there are exactly
/// `|C(ρ)| = Π_l k_l! l^{k_l}` solutions.
pub(crate) fn visit_conjugators<F: FnMut(&[usize])>(rho: &[usize], rho_prime: &[usize], mut visit: F) {
    let n = rho.len();
    let mut target = cycles_of(rho);
    let mut source = cycles_of(rho_prime);
    target.sort_by_key(Vec::len);
    source.sort_by_key(Vec::len);
    if target.iter().map(Vec::len).ne(source.iter().map(Vec::len)) {
        return;
    }
    let mut tau = vec![usize::MAX; n];
    let mut used = vec![false; target.len()];
    assign(0, &source, &target, &mut used, &mut tau, &mut visit);
}

fn assign<F: FnMut(&[usize])>(
    slot: usize,
    source: &[Vec<usize>],
    target: &[Vec<usize>],
    used: &mut [bool],
    tau: &mut [usize],
    visit: &mut F,
) {
    if slot == source.len() {
        visit(tau);
        return;
    }
    let src = &source[slot];
    let len = src.len();
    for (t, dst) in target.iter().enumerate() {
        if used[t] || dst.len() != len {
            continue;
        }
        used[t] = true;
        for rot in 0..len {
            for (j, &c) in src.iter().enumerate() {
                tau[c] = dst[(j + rot) % len];
            }
            assign(slot + 1, source, target, used, tau, visit);
        }
        used[t] = false;
    }
}

/// All `τ` with `τ⁻¹ σ^a τ = σ^b`.
pub fn conjugator_solutions(sigma: &Permutation, a: i64, b: i64) -> Vec<Permutation> {
    let rho = pow_slice(sigma.images(), a);
    let rho_prime = pow_slice(sigma.images(), b);
    let mut out = Vec::new();
    visit_conjugators(&rho, &rho_prime, |tau| {
        out.push(Permutation::from_vec_unchecked(tau.to_vec()))
    });
    out
}

/// Exhaustive counts for `BS(a,b) = <x, y | y⁻¹ x^a y = x^b>` in degree `n <= 7`.
///
/// Every `σ ∈ Sym(n)` is tried as the image of `x`; the admissible images of
/// `y` are exactly the conjugators of `σ^a` onto `σ^b`. Runs on the current
/// rayon pool; totals do not depend on how the outer loop is split.
pub fn oracle_counts(params: &BsParams, n: usize) -> Result<OracleCounts> {
    check_degree(n)?;
    let (a, b) = (params.a(), params.b());
    let tally = all_permutations(n)
        .par_iter()
        .map(|sigma| {
            let x = sigma.images();
            let mut tally = Tally::default();
            visit_conjugators(&pow_slice(x, a), &pow_slice(x, b), |y| tally.record(x, y));
            tally
        })
        .reduce(Tally::default, Tally::merge);
    OracleCounts::from_tally(n, tally)
}

/// Exhaustive counts for `Z * Z/mZ = <x, y | x^m>` in degree `n <= 7`.
pub fn oracle_free_product(m: u64, n: usize) -> Result<OracleCounts> {
    check_degree(n)?;
    if m == 0 {
        return Err(invalid!("m must be >= 1"));
    }
    let mut xs: Vec<Vec<usize>> = Vec::new();
    visit_order_dividing(m, n, |p| xs.push(p.to_vec()));
    let ys = all_permutations(n);
    let tally = xs
        .par_iter()
        .map(|x| {
            let mut tally = Tally::default();
            for y in &ys {
                tally.record(x, y.images());
            }
            tally
        })
        .reduce(Tally::default, Tally::merge);
    OracleCounts::from_tally(n, tally)
}
