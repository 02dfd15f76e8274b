//! Exact integer combinatorics and the small amount of elementary number
//! theory the growth formulas need.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{invalid, Result};
use crate::logspace::LogValue;

/// Positive divisors of a positive integer, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSet(Vec<u64>);

impl DivisorSet {
    /// Panics if `n == 0`.
    pub fn of(n: u64) -> Self {
        assert!(n > 0, "divisors of 0");
        let mut divs = vec![1u64];
        for (p, e) in factorize(n) {
            let base = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..base {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        DivisorSet(divs)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    /// Divisors strictly below the integer itself.
    pub fn proper(&self) -> &[u64] {
        &self.0[..self.0.len() - 1]
    }
}

impl IntoIterator for DivisorSet {
    type Item = u64;
    type IntoIter = std::vec::IntoIter<u64>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// Prime factorisation by trial division over a 2,3 wheel.
/// Returns `(prime, exponent)` pairs in increasing prime order; `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    // candidates 6k - 1, 6k + 1
    let mut p = 5u64;
    let mut step = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn divisors(n: i64) -> Result<DivisorSet> {
    if n <= 0 {
        return Err(invalid!("divisors: n must be positive, got {n}"));
    }
    Ok(DivisorSet::of(n as u64))
}

/// Product of the distinct primes dividing `|k|`.
pub fn radical(k: i64) -> Result<u64> {
    if k == 0 {
        return Err(invalid!("radical: k must be nonzero"));
    }
    Ok(radical_u64(k.unsigned_abs()))
}

pub(crate) fn radical_u64(k: u64) -> u64 {
    factorize(k).into_iter().map(|(p, _)| p).product()
}

/// Number of positive divisors.
pub fn tau(m: i64) -> Result<u64> {
    if m <= 0 {
        return Err(invalid!("tau: m must be positive, got {m}"));
    }
    Ok(factorize(m as u64).into_iter().map(|(_, e)| u64::from(e) + 1).product())
}

/// Exact binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::ZERO;
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    // acc stays integral: after step i it equals C(n - k + i, i)
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    falling_factorial(n, n)
}

/// `n (n-1) ... (n-k+1)`; 1 when `k == 0`, 0 when `k > n`.
pub fn falling_factorial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    // pack factors into u64 words before touching the big integer
    let mut acc = BigUint::one();
    let mut word: u64 = 1;
    for f in (n - k + 1)..=n {
        match word.checked_mul(f) {
            Some(w) => word = w,
            None => {
                acc *= word;
                word = f;
            }
        }
    }
    acc * word
}

const DIRECT_LOG_FACTORIAL_LIMIT: u64 = 256;

/// `ln(n!)`. Summed directly for small n, Stirling series beyond that;
/// never goes through the big integer.
pub fn log_factorial(n: u64) -> LogValue {
    LogValue::from_ln(ln_factorial(n as f64))
}

/// `ln Γ(x + 1)` for real `x >= 0`.
pub(crate) fn ln_factorial(x: f64) -> f64 {
    if x.fract() == 0.0 && x < DIRECT_LOG_FACTORIAL_LIMIT as f64 {
        return (2..=x as u64).map(|k| (k as f64).ln()).sum();
    }
    // shift small real arguments up so the asymptotic series is accurate
    let mut shift = 0.0;
    let mut y = x;
    while y < DIRECT_LOG_FACTORIAL_LIMIT as f64 {
        y += 1.0;
        shift += y.ln();
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    y * y.ln() - y + 0.5 * (2.0 * std::f64::consts::PI * y).ln() + series - shift
}

/// `ln C(n, k)` via log-factorials.
pub fn log_binomial(n: u64, k: u64) -> LogValue {
    if k > n {
        return LogValue::ZERO;
    }
    LogValue::from_ln(ln_factorial(n as f64) - ln_factorial(k as f64) - ln_factorial((n - k) as f64))
}
