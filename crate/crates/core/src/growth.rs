//! Exact counting sequences.
//!
//! Everything here is exact big-integer arithmetic. The coprime
//! Baumslag–Solitar counts have two deliberately separate code paths
//! ([`gelman_count`] and [`semidirect_count`]) so each can check the other.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{inconsistent, invalid, Result};
use crate::numth::{self, binomial, factorial, falling_factorial, DivisorSet};

/// Validated parameters of `BS(a,b)`, with `a = m u`, `b = m v`, `m = gcd(|a|,|b|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BsParams {
    a: i64,
    b: i64,
    m: u64,
    u: i64,
    v: i64,
    rad_uv: u64,
}

impl BsParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(invalid!("BS({a},{b}): a and b must be nonzero"));
        }
        let m = numth::gcd(a.unsigned_abs(), b.unsigned_abs());
        let u = a / m as i64;
        let v = b / m as i64;
        // gcd(u, v) = 1, so the radical of |uv| splits
        let rad_uv = numth::radical_u64(u.unsigned_abs()) * numth::radical_u64(v.unsigned_abs());
        Ok(BsParams { a, b, m, u, v, rad_uv })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn u(&self) -> i64 {
        self.u
    }
    pub fn v(&self) -> i64 {
        self.v
    }
    pub fn rad_uv(&self) -> u64 {
        self.rad_uv
    }

    pub fn is_coprime(&self) -> bool {
        self.m == 1
    }

    /// `gcd(d, |ab|) == 1`, without forming the product.
    pub fn coprime_to_ab(&self, d: u64) -> bool {
        numth::gcd(d, self.a.unsigned_abs()) == 1 && numth::gcd(d, self.b.unsigned_abs()) == 1
    }

    fn require_coprime(&self, op: &str) -> Result<()> {
        if self.m != 1 {
            return Err(invalid!(
                "{op} needs gcd(a,b) = 1, got BS({},{}) with gcd {}",
                self.a,
                self.b,
                self.m
            ));
        }
        Ok(())
    }
}

/// Shorthand for [`BsParams::new`].
pub fn normalize(a: i64, b: i64) -> Result<BsParams> {
    BsParams::new(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    AllSubgroups,
    MaximalSubgroups,
    TransitiveReps,
    PrimitiveReps,
    HomCounts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupDescriptor {
    Bs(BsParams),
    FreeProductZmodM(u64),
    Z,
    ZInvK(i64),
    /// `Z/mZ`; only meaningful with [`SeriesKind::HomCounts`].
    Cyclic(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Gelman,
    Semidirect,
    Hall,
    Oracle,
    ClosedForm,
    Recurrence,
    UpperBound,
}

/// An indexed sequence of exact non-negative counts, tagged with what
/// was counted and how.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthSeries {
    pub kind: SeriesKind,
    pub group: GroupDescriptor,
    pub method: Method,
    values: BTreeMap<u64, BigUint>,
}

impl GrowthSeries {
    pub fn new(kind: SeriesKind, group: GroupDescriptor, method: Method) -> Self {
        GrowthSeries {
            kind,
            group,
            method,
            values: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, n: u64, value: BigUint) {
        debug_assert!(
            !(self.kind == SeriesKind::AllSubgroups && n == 1) || value.is_one(),
            "a_1 must be 1"
        );
        self.values.insert(n, value);
    }

    pub fn get(&self, n: u64) -> Option<&BigUint> {
        self.values.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> + '_ {
        self.values.iter().map(|(&n, v)| (n, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.values.keys().next_back().copied()
    }

    /// Values at consecutive indices starting from the smallest.
    pub fn values(&self) -> impl Iterator<Item = &BigUint> + '_ {
        self.values.values()
    }
}

/// Memoised prefix `E_m(0), E_m(1), ...` where `E_m(n)` counts
/// `σ ∈ Sym(n)` with `σ^m = 1`, i.e. `|Hom(Z/mZ, Sym(n))|`.
///
/// Uses `E(n) = Σ_{d | m, d <= n} (n-1)!/(n-d)! · E(n-d)`, classifying by
/// the length of the cycle through the first point.
#[derive(Clone, Debug)]
pub struct OrderDividingCounts {
    m: u64,
    cycle_lengths: Vec<u64>,
    values: Vec<BigUint>,
}

impl OrderDividingCounts {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(invalid!("order bound m must be >= 1"));
        }
        Ok(OrderDividingCounts {
            m,
            cycle_lengths: DivisorSet::of(m).into_iter().collect(),
            values: vec![BigUint::one()],
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn extend_to(&mut self, n: u64) {
        while (self.values.len() as u64) <= n {
            let k = self.values.len() as u64;
            let mut acc = BigUint::zero();
            for &d in self.cycle_lengths.iter().take_while(|&&d| d <= k) {
                acc += falling_factorial(k - 1, d - 1) * &self.values[(k - d) as usize];
            }
            self.values.push(acc);
        }
    }

    pub fn get(&mut self, n: u64) -> &BigUint {
        self.extend_to(n);
        &self.values[n as usize]
    }

    /// `E(0..=n)`.
    pub fn prefix(&mut self, n: u64) -> &[BigUint] {
        self.extend_to(n);
        &self.values[..=n as usize]
    }
}

/// `E_m(n)`: permutations of degree `n` whose order divides `m`.
pub fn count_order_dividing(m: u64, n: u64) -> Result<BigUint> {
    Ok(OrderDividingCounts::new(m)?.get(n).clone())
}

/// `h_n(Z * Z/mZ) = n! · E_m(n)`.
pub fn hom_count_free_product(m: u64, n: u64) -> Result<BigUint> {
    Ok(factorial(n) * count_order_dividing(m, n)?)
}

/// `h_0, ..., h_N` for `Z * Z/mZ`, in the layout [`hall_counts`] expects.
pub fn free_product_hom_sequence(m: u64, n_max: u64) -> Result<Vec<BigUint>> {
    let mut table = OrderDividingCounts::new(m)?;
    let mut fact = BigUint::one();
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for (n, e) in table.prefix(n_max).iter().enumerate() {
        if n > 0 {
            fact *= n as u64;
        }
        out.push(&fact * e);
    }
    Ok(out)
}

/// `h_n(Z) = n!` for `n = 0..=N`.
pub fn z_hom_sequence(n_max: u64) -> Vec<BigUint> {
    let mut fact = BigUint::one();
    let mut out = vec![fact.clone()];
    for n in 1..=n_max {
        fact *= n;
        out.push(fact.clone());
    }
    out
}

/// Hall's transitivity sieve.
///
/// `hom[n]` must hold `|Hom(G, Sym(n))|` for `n = 0..=N` with `hom[0] = hom[1] = 1`.
/// Returns the transitive counts `t_n` and the subgroup counts
/// `a_n = t_n / (n-1)!` for `n = 1..=N`, computed from
/// `t_n = h_n - Σ_{k=1}^{n-1} C(n-1, k-1) t_k h_{n-k}`.
///
/// A negative `t_n` or a remainder in the division is reported as
/// [`Error::Consistency`](crate::Error::Consistency): neither can happen for a
/// genuine homomorphism-count sequence.
pub fn hall_counts(hom: &[BigUint], group: GroupDescriptor) -> Result<(GrowthSeries, GrowthSeries)> {
    if hom.len() < 2 {
        return Err(invalid!("hall_counts needs h_0 and h_1 at least"));
    }
    if !hom[0].is_one() || !hom[1].is_one() {
        return Err(invalid!("hall_counts: h_0 and h_1 must both be 1"));
    }
    let n_max = hom.len() - 1;
    let mut transitive = GrowthSeries::new(SeriesKind::TransitiveReps, group, Method::Hall);
    let mut subgroups = GrowthSeries::new(SeriesKind::AllSubgroups, group, Method::Hall);

    let mut t: Vec<BigInt> = vec![BigInt::zero()];
    // Pascal row C(n-1, 0..=n-1), advanced in place
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    let mut fact = BigUint::one(); // (n-1)!

    for n in 1..=n_max {
        if n >= 2 {
            let mut next = Vec::with_capacity(n);
            next.push(BigUint::one());
            for k in 1..n - 1 {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(BigUint::one());
            row = next;
            fact *= (n - 1) as u64;
        }

        let mut sum = BigInt::zero();
        for k in 1..n {
            let term = &row[k - 1] * &hom[n - k];
            sum += &t[k] * BigInt::from(term);
        }
        let tn = BigInt::from(hom[n].clone()) - sum;
        if tn.sign() == Sign::Minus {
            return Err(inconsistent!("Hall sieve produced negative t_{n}"));
        }
        let tn_u = tn.magnitude().clone();
        let (q, r) = tn_u.div_rem(&fact);
        if !r.is_zero() {
            return Err(inconsistent!("(n-1)! does not divide t_{n} (remainder {r})"));
        }
        transitive.insert(n as u64, tn_u);
        subgroups.insert(n as u64, q);
        t.push(tn);
    }
    Ok((transitive, subgroups))
}

/// Subgroup counts of `Z * Z/mZ` for `n = 1..=N`.
pub fn free_product_subgroups(m: u64, n_max: u64) -> Result<GrowthSeries> {
    let hom = free_product_hom_sequence(m, n_max)?;
    Ok(hall_counts(&hom, GroupDescriptor::FreeProductZmodM(m))?.1)
}

/// Gelman's formula `a_n(BS(a,b)) = Σ_{d | n, gcd(d, ab) = 1} d`, valid when `gcd(a,b) = 1`.
pub fn gelman_count(params: &BsParams, n: u64) -> Result<BigUint> {
    params.require_coprime("gelman_count")?;
    if n == 0 {
        return Err(invalid!("index must be >= 1"));
    }
    let sum: u64 = DivisorSet::of(n).iter().filter(|&d| params.coprime_to_ab(d)).sum();
    Ok(BigUint::from(sum))
}

/// Gelman counts for `n = 1..=N` by sieving over the admissible divisors.
pub fn gelman_series(params: &BsParams, n_max: u64) -> Result<GrowthSeries> {
    params.require_coprime("gelman_series")?;
    let len = n_max as usize + 1;
    let mut acc = vec![0u64; len];
    for d in 1..=n_max {
        if !params.coprime_to_ab(d) {
            continue;
        }
        for multiple in (d as usize..len).step_by(d as usize) {
            acc[multiple] = acc[multiple].checked_add(d).expect("divisor sum exceeds u64");
        }
    }
    let mut series = GrowthSeries::new(SeriesKind::AllSubgroups, GroupDescriptor::Bs(*params), Method::Gelman);
    for (n, value) in acc.into_iter().enumerate().skip(1) {
        series.insert(n as u64, BigUint::from(value));
    }
    Ok(series)
}

/// `a_n(Z) = 1`.
pub fn subgroup_count_z(_n: u64) -> u64 {
    1
}

/// `a_n(Z[1/k])`: one subgroup when `gcd(n, k) = 1`, none otherwise.
pub fn subgroup_count_z_inv_k(k: i64, n: u64) -> Result<u64> {
    let rad = numth::radical(k)?;
    Ok(u64::from(numth::gcd(n, rad) == 1))
}

/// `|Der(Z, Z/dZ)| = d`: a derivation on a free cyclic group is fixed by
/// the image of the generator, whatever the action.
pub fn derivation_count_z(d: u64) -> BigUint {
    BigUint::from(d)
}

/// Derivation-sum count for the coprime case: `BS(a,b)` has the same
/// finite-index subgroups as `Z[1/(ab)] ⋊ Z`, and for a semidirect product
/// `A ⋊ B` the index-n subgroups are counted by
/// `Σ |Der(B_0, A/A_0)|` over invariant `A_0`, `B_0` with `[A:A_0][B:B_0] = n`.
pub fn semidirect_count(params: &BsParams, n: u64) -> Result<BigUint> {
    params.require_coprime("semidirect_count")?;
    if n == 0 {
        return Err(invalid!("index must be >= 1"));
    }
    let k = params
        .a()
        .checked_mul(params.b())
        .ok_or_else(|| invalid!("ab overflows i64"))?;
    // every finite-index A_0 is an ideal, hence B-invariant
    let term = |index_a: u64, index_b: u64| -> Result<BigUint> {
        let a0 = subgroup_count_z_inv_k(k, index_a)?;
        let b0 = subgroup_count_z(index_b);
        Ok(BigUint::from(a0 * b0) * derivation_count_z(index_a))
    };
    let mut total = BigUint::zero();
    let mut e = 1u64;
    while e * e <= n {
        if n.is_multiple_of(e) {
            total += term(n / e, e)?;
            if e * e != n {
                total += term(e, n / e)?;
            }
        }
        e += 1;
    }
    Ok(total)
}

/// Maximal subgroups of `BS(a,b)`, `gcd(a,b) = 1`: `p + 1` at primes `p ∤ ab`, zero otherwise.
pub fn max_count_coprime(params: &BsParams, n: u64) -> Result<BigUint> {
    params.require_coprime("max_count_coprime")?;
    if numth::is_prime(n) && params.coprime_to_ab(n) {
        Ok(BigUint::from(n + 1))
    } else {
        Ok(BigUint::zero())
    }
}

/// Fixed-point distribution over the permutations of degree `n` whose order divides `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixCensus {
    pub m: u64,
    pub n: u64,
    /// `counts[k]` = number with exactly `k` fixed points.
    pub counts: Vec<BigUint>,
}

impl FixCensus {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Number with at least `k` fixed points.
    pub fn tail(&self, k: usize) -> BigUint {
        self.counts.iter().skip(k).sum()
    }
}

/// Fixed-point-free counts `F(0..=n)` by inclusion–exclusion
/// `F(j) = Σ_i (-1)^i C(j,i) E(j-i)`.
fn fixed_point_free_counts(table: &mut OrderDividingCounts, n: u64) -> Result<Vec<BigUint>> {
    let e: Vec<BigInt> = table.prefix(n).iter().cloned().map(BigInt::from).collect();
    let mut out = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        let mut acc = BigInt::zero();
        let mut c = BigInt::one();
        for i in 0..=j {
            let term = &c * &e[(j - i) as usize];
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            c = c * (j - i) / (i + 1);
        }
        match acc.to_biguint() {
            Some(v) => out.push(v),
            None => return Err(inconsistent!("negative fixed-point-free count at degree {j}")),
        }
    }
    Ok(out)
}

pub fn fix_census(m: u64, n: u64) -> Result<FixCensus> {
    if m < 2 || n < 1 {
        return Err(invalid!("fix_census needs m >= 2 and n >= 1, got m={m}, n={n}"));
    }
    let mut table = OrderDividingCounts::new(m)?;
    let free = fixed_point_free_counts(&mut table, n)?;
    let counts = (0..=n)
        .map(|k| binomial(n, k as i64) * &free[(n - k) as usize])
        .collect();
    let census = FixCensus { m, n, counts };
    if &census.total() != table.get(n) {
        return Err(inconsistent!("census for m={m}, n={n} does not sum to E_m(n)"));
    }
    Ok(census)
}

/// `⌊n / ln n⌋`, the fixed-point threshold.
pub fn few_fixed_threshold(n: u64) -> u64 {
    (n as f64 / (n as f64).ln()).floor() as u64
}

/// Fraction of order-dividing-`m` permutations of degree `n` with at least
/// `⌊n / ln n⌋` fixed points, formed as an exact rational and then rounded.
pub fn census_ratio(m: u64, n: u64) -> Result<f64> {
    if n < 3 {
        return Err(invalid!("census_ratio needs n >= 3, got {n}"));
    }
    let census = fix_census(m, n)?;
    let ratio = BigRational::new(
        BigInt::from(census.tail(few_fixed_threshold(n) as usize)),
        BigInt::from(census.total()),
    );
    ratio
        .to_f64()
        .ok_or_else(|| inconsistent!("census ratio not representable"))
}

/// `min(d^{2n/d}, ⌈3^{2n/3}⌉)` for `d | n`.
fn derivation_bound_exact(n: u64, d: u64) -> BigUint {
    let exp = u32::try_from(2 * n / d).expect("exponent overflow");
    let by_d = BigUint::from(d).pow(exp);
    let three_2n = BigUint::from(3u32).pow(u32::try_from(2 * n).expect("exponent overflow"));
    if by_d.pow(3) <= three_2n {
        return by_d;
    }
    let mut root = three_2n.nth_root(3);
    if root.pow(3) < three_2n {
        root += 1u32;
    }
    root
}

/// Upper bound on `a_n(BS(a,b))` for `gcd(a,b) = m > 1`:
/// `Σ_{d | n, gcd(d, uv) = 1} a_{n/d}(Z * Z/mZ) · min(d^{2n/d}, 3^{2n/3})`.
pub fn shalev_upper_bound(params: &BsParams, n: u64) -> Result<BigUint> {
    let series = shalev_upper_bound_series(params, n)?;
    Ok(series.get(n).cloned().unwrap_or_default())
}

pub fn shalev_upper_bound_series(params: &BsParams, n_max: u64) -> Result<GrowthSeries> {
    if params.is_coprime() {
        return Err(invalid!("shalev_upper_bound needs gcd(a,b) > 1"));
    }
    let free = free_product_subgroups(params.m(), n_max)?;
    let mut out = GrowthSeries::new(
        SeriesKind::AllSubgroups,
        GroupDescriptor::Bs(*params),
        Method::UpperBound,
    );
    for n in 1..=n_max {
        let mut bound = BigUint::zero();
        for d in DivisorSet::of(n).iter() {
            if numth::gcd(d, params.rad_uv()) != 1 {
                continue;
            }
            bound += free.get(n / d).expect("free product prefix") * derivation_bound_exact(n, d);
        }
        out.insert(n, bound);
    }
    Ok(out)
}
