//! Main terms and decay diagnostics, all evaluated in natural-log space.
//!
//! With `δ = 1 - 1/m` and `h(x) = Σ_{d | m, d < m} x^{d/m} / d`:
//!
//! ```text
//! f(x) = K_m · x^{δx} · exp(-δx + h(x))      (E_m(n) ~ f(n))
//! g(x) = x · f(x)                             (a_n ~ g(n) for gcd(a,b) = m > 1)
//! K_m  = m^{-1/2}              m odd
//!        m^{-1/2} e^{-1/(2m)}  m even
//! ```
//!
//! `f` and `g` are evaluated at real arguments; the decay quantities need
//! them at `n/2` and `n - ⌊n/ln n⌋`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::growth::few_fixed_threshold;
use crate::logspace::LogValue;
use crate::numth::{self, log_binomial, DivisorSet};

fn require_m(m: u64) -> Result<()> {
    if m < 2 {
        return Err(invalid!("order m must be >= 2, got {m}"));
    }
    Ok(())
}

pub fn k_m(m: u64) -> Result<LogValue> {
    require_m(m)?;
    let mut ln = -0.5 * (m as f64).ln();
    if m.is_multiple_of(2) {
        ln -= 1.0 / (2.0 * m as f64);
    }
    Ok(LogValue::from_ln(ln))
}

/// `Σ_{d | m, d < m} x^{d/m} / d`.
pub fn divisor_sum_term(m: u64, x: f64) -> f64 {
    DivisorSet::of(m)
        .proper()
        .iter()
        .map(|&d| x.powf(d as f64 / m as f64) / d as f64)
        .sum()
}

pub fn log_f(m: u64, x: f64) -> Result<LogValue> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
    if !(x > 0.0) {
        return Err(invalid!("log_f needs x > 0, got {x}"));
    }
    let delta = 1.0 - 1.0 / m as f64;
    let k = k_m(m)?;
    Ok(LogValue::from_ln(
        k.ln() + delta * x * x.ln() - delta * x + divisor_sum_term(m, x),
    ))
}

pub fn log_g(m: u64, x: f64) -> Result<LogValue> {
    Ok(LogValue::from_f64(x) * log_f(m, x)?)
}

/// Which main term an exact count is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MainTerm {
    /// `f(n)`, for `E_m(n)`.
    F,
    /// `g(n) = n f(n)`, for subgroup counts.
    G,
}

/// `exact / f(n)` or `exact / g(n)`, by subtracting logs.
pub fn ratio_to_main_term(exact: &BigUint, m: u64, n: u64, term: MainTerm) -> Result<f64> {
    if exact.is_zero() {
        return Err(invalid!("ratio_to_main_term needs a positive count"));
    }
    let main = match term {
        MainTerm::F => log_f(m, n as f64)?,
        MainTerm::G => log_g(m, n as f64)?,
    };
    Ok((LogValue::from_biguint(exact) / main).value())
}

/// Both sides of `C(n, ⌊n/ln n⌋) < exp(3 ⌊n/ln n⌋ ln ln n)`.
pub fn lemma45_bound_check(n: u64) -> Result<(LogValue, LogValue)> {
    if n < 16 {
        return Err(invalid!("lemma45_bound_check needs n >= 16, got {n}"));
    }
    let g = few_fixed_threshold(n);
    let lhs = log_binomial(n, g);
    let rhs = LogValue::from_ln(3.0 * g as f64 * (n as f64).ln().ln());
    Ok((lhs, rhs))
}

/// `C(n, k) f(n - k) / f(n)` with `k = ⌊n/ln n⌋`.
pub fn lemma46_quantity(m: u64, n: u64) -> Result<LogValue> {
    require_m(m)?;
    if n < 16 {
        return Err(invalid!("lemma46_quantity needs n >= 16, got {n}"));
    }
    let k = few_fixed_threshold(n);
    Ok(log_binomial(n, k) * log_f(m, (n - k) as f64)? / log_f(m, n as f64)?)
}

/// `n 3^{2n/3} g(n/2) / g(n)`.
pub fn lemma58_quantity(m: u64, n: u64) -> Result<LogValue> {
    require_m(m)?;
    if n < 4 {
        return Err(invalid!("lemma58_quantity needs n >= 4, got {n}"));
    }
    let x = n as f64;
    let prefactor = LogValue::from_ln(x.ln() + 2.0 * x / 3.0 * 3f64.ln());
    Ok(prefactor * log_g(m, x / 2.0)? / log_g(m, x)?)
}

/// `(K n (n/e)^{δn}, g(n), K n (n/e)^{δn} e^n)`.
pub fn g_sandwich_check(m: u64, n: u64) -> Result<(LogValue, LogValue, LogValue)> {
    require_m(m)?;
    if n < m {
        return Err(invalid!("g_sandwich_check needs n >= m, got m={m}, n={n}"));
    }
    let x = n as f64;
    let delta = 1.0 - 1.0 / m as f64;
    let lower = LogValue::from_ln(k_m(m)?.ln() + x.ln() + delta * x * (x.ln() - 1.0));
    let mid = log_g(m, x)?;
    let upper = LogValue::from_ln(lower.ln() + x);
    Ok((lower, mid, upper))
}

/// `min(d^{2n/d}, 3^{2n/3})`.
pub fn der_bound(n: u64, d: u64) -> Result<LogValue> {
    if n == 0 || d == 0 {
        return Err(invalid!("der_bound needs n, d >= 1"));
    }
    let x = n as f64;
    let by_d = 2.0 * x / d as f64 * (d as f64).ln();
    let by_three = 2.0 * x / 3.0 * 3f64.ln();
    Ok(LogValue::from_ln(by_d.min(by_three)))
}

/// Bound on the number of maximal subgroups of index `n` that do not
/// contain the abelian normal subgroup: `0` for composite `n`, `n²` for prime `n`.
pub fn mc_bound(n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(invalid!("mc_bound needs n >= 2, got {n}"));
    }
    if numth::is_prime(n) {
        Ok(BigUint::from(n) * n)
    } else {
        Ok(BigUint::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::OrderDividingCounts;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn k_m_values() {
        assert!(close(k_m(3).unwrap().ln(), -0.549_306_144_334_054_9, 1e-12));
        assert!(close(k_m(2).unwrap().ln(), -0.5 * 2f64.ln() - 0.25, 1e-15));
        assert!(close(k_m(2).unwrap().ln(), -0.596_573_590_279_972_6, 1e-12));
        assert!(close(k_m(4).unwrap().ln(), -0.5 * 4f64.ln() - 0.125, 1e-15));
        assert!(k_m(1).is_err());
    }

    #[test]
    fn divisor_sum_examples() {
        assert!(close(divisor_sum_term(2, 4.0), 2.0, 1e-15));
        let direct = 6f64.powf(1.0 / 6.0) + 6f64.powf(2.0 / 6.0) / 2.0 + 6f64.powf(0.5) / 3.0;
        assert!(close(divisor_sum_term(6, 6.0), direct, 1e-14));
        assert!(close(divisor_sum_term(6, 6.0), 3.073_063_031_941_073, 1e-12));
        assert!(close(divisor_sum_term(2, 1.0), 1.0, 1e-15));
    }

    #[test]
    fn divisor_sum_below_n() {
        for m in 2..=100u64 {
            for n in m..m + 300 {
                assert!(divisor_sum_term(m, n as f64) < n as f64, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn log_f_examples() {
        let lf = log_f(2, 4.0).unwrap().ln();
        assert!(close(lf, k_m(2).unwrap().ln() + 2.0 * 4f64.ln() - 2.0 + 2.0, 1e-12));
        assert!(close(lf, 2.17601, 1e-5));
        assert!(close(lf.exp(), 8.811, 1e-3));
        assert!(close(log_f(2, 1.0).unwrap().ln(), k_m(2).unwrap().ln() + 0.5, 1e-15));
        let l3 = log_f(3, 27.0).unwrap().ln();
        // only d = 1 is a proper divisor of 3
        let direct = k_m(3).unwrap().ln() + 2.0 / 3.0 * 27.0 * 27f64.ln() - 18.0 + 3.0;
        assert!(close(l3, direct, 1e-10));
        assert!(close(l3, 43.775_757_443_743_87, 1e-9));
        assert!(log_f(2, 0.0).is_err());
    }

    #[test]
    fn log_g_examples() {
        assert!(close(log_g(2, 4.0).unwrap().ln(), 4f64.ln() + 2.17601, 1e-5));
        assert_eq!(log_g(2, 1.0).unwrap(), log_f(2, 1.0).unwrap());
        assert!(close(
            log_g(3, 27.0).unwrap().ln(),
            27f64.ln() + 43.775_757_443_743_87,
            1e-9
        ));
    }

    #[test]
    fn ratio_examples() {
        let r = ratio_to_main_term(&BigUint::from(10u32), 2, 4, MainTerm::F).unwrap();
        assert!(close(r, 1.135, 1e-3));
        let f = log_f(2, 20.0).unwrap().value().round() as u64;
        assert!(close(
            ratio_to_main_term(&BigUint::from(f), 2, 20, MainTerm::F).unwrap(),
            1.0,
            1e-9
        ));
        assert!(ratio_to_main_term(&BigUint::zero(), 2, 4, MainTerm::F).is_err());

        let mut table = OrderDividingCounts::new(2).unwrap();
        let r = ratio_to_main_term(table.get(500), 2, 500, MainTerm::F).unwrap();
        assert!((r - 1.0).abs() < 0.1, "E_2(500)/f(500) = {r}");
    }

    #[test]
    fn lemma45_examples() {
        let (lhs, rhs) = lemma45_bound_check(100).unwrap();
        let exact = LogValue::from_biguint(&numth::binomial(100, 21));
        assert!(close(lhs.ln(), exact.ln(), 1e-9));
        assert!(close(rhs.ln(), 63.0 * 100f64.ln().ln(), 1e-12));
        assert!(lhs < rhs);
        let (lhs, rhs) = lemma45_bound_check(16).unwrap();
        assert!(lhs.ln().is_finite() && rhs.ln().is_finite());
        let (lhs, rhs) = lemma45_bound_check(10_000).unwrap();
        assert!(lhs < rhs);
        assert!(lemma45_bound_check(15).is_err());
    }

    #[test]
    fn lemma45_holds_from_16() {
        for n in 16..=5000 {
            let (lhs, rhs) = lemma45_bound_check(n).unwrap();
            assert!(lhs < rhs, "n={n}");
        }
    }

    #[test]
    fn lemma46_examples() {
        assert!(lemma46_quantity(2, 1000).unwrap().log10() < -5.0);
        assert!(lemma46_quantity(2, 10_000).unwrap().log10() < -100.0);
        let grid: Vec<f64> = [1000u64, 3000, 10_000]
            .iter()
            .map(|&n| lemma46_quantity(2, n).unwrap().ln())
            .collect();
        assert!(grid.windows(2).all(|w| w[1] < w[0]));
        assert!(lemma46_quantity(2, 16).unwrap().ln().is_finite());
    }

    #[test]
    fn lemma58_examples() {
        assert!(lemma58_quantity(2, 1000).unwrap().ln() < 0.0);
        assert!(lemma58_quantity(2, 10_000).unwrap().log10() < -100.0);
        let grid: Vec<f64> = [100u64, 1000, 10_000]
            .iter()
            .map(|&n| lemma58_quantity(2, n).unwrap().ln())
            .collect();
        assert!(grid.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn decay_quantities_on_grid() {
        for m in [2u64, 3, 6] {
            let q46: Vec<f64> = [1000u64, 2000, 5000, 10_000]
                .iter()
                .map(|&n| lemma46_quantity(m, n).unwrap().ln())
                .collect();
            let q58: Vec<f64> = [1000u64, 2000, 5000, 10_000]
                .iter()
                .map(|&n| lemma58_quantity(m, n).unwrap().ln())
                .collect();
            assert!(q46.windows(2).all(|w| w[1] < w[0]), "m={m}: {q46:?}");
            assert!(q58.windows(2).all(|w| w[1] < w[0]), "m={m}: {q58:?}");
            assert!(q46[3] / std::f64::consts::LN_10 < -50.0);
            assert!(q58[3] / std::f64::consts::LN_10 < -50.0);
        }
    }

    #[test]
    fn sandwich_examples() {
        let (lo, mid, hi) = g_sandwich_check(2, 4).unwrap();
        let k = k_m(2).unwrap().ln();
        assert!(close(lo.ln(), k + 4f64.ln() + 2.0 * (4f64.ln() - 1.0), 1e-12));
        assert_eq!(mid, log_g(2, 4.0).unwrap());
        assert!(close(hi.ln(), lo.ln() + 4.0, 1e-12));
        for (m, n) in [(2, 4), (2, 2), (6, 6)] {
            let (lo, mid, hi) = g_sandwich_check(m, n).unwrap();
            assert!(lo < mid && mid < hi, "m={m} n={n}");
        }
        assert!(g_sandwich_check(6, 5).is_err());
    }

    #[test]
    fn sandwich_is_strict_over_log_grid() {
        for m in 2..=10u64 {
            let mut n = m as f64;
            while n <= 1e4 {
                let (lo, mid, hi) = g_sandwich_check(m, n as u64).unwrap();
                assert!(lo < mid && mid < hi, "m={m} n={n}");
                n *= 1.13;
            }
        }
    }

    #[test]
    fn der_bound_examples() {
        assert!(close(der_bound(7, 1).unwrap().ln(), 0.0, 1e-15));
        assert!(close(der_bound(3, 3).unwrap().value(), 9.0, 1e-9));
        assert!(close(der_bound(6, 2).unwrap().value(), 64.0, 1e-9));
    }

    #[test]
    fn mc_bound_examples() {
        assert_eq!(mc_bound(4).unwrap(), BigUint::zero());
        assert_eq!(mc_bound(5).unwrap(), BigUint::from(25u32));
        assert_eq!(mc_bound(2).unwrap(), BigUint::from(4u32));
        assert!(mc_bound(1).is_err());
    }
}
