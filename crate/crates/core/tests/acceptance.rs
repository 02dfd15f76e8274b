//! Exit criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p subgrowth-core --test acceptance -- --nocapture --test-threads 1`
//! to see them in order.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use subgrowth::asymptotic::{lemma46_quantity, lemma58_quantity, ratio_to_main_term, MainTerm};
use subgrowth::growth::{
    census_ratio, count_order_dividing, free_product_hom_sequence, free_product_subgroups, gelman_count, gelman_series,
    hall_counts, max_count_coprime, normalize, semidirect_count, GroupDescriptor, OrderDividingCounts,
};
use subgrowth::permgrp::{all_permutations, monte_carlo_generation, oracle_counts, oracle_free_product};

fn report(id: u32, what: &str, ok: bool, detail: String) {
    println!("[{}] AC{id:02} {what}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "AC{id:02} {what} failed: {detail}");
}

fn within(start: Instant, budget: Duration) -> bool {
    start.elapsed() < budget
}

fn brute_order_dividing(m: u64, n: usize) -> BigUint {
    let count = all_permutations(n)
        .into_iter()
        .filter(|p| p.pow(m as i64).is_identity())
        .count();
    BigUint::from(count)
}

#[test]
fn ac01_gelman_exactness() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for (a, b) in [(1, 2), (2, 3), (3, 4)] {
        let p = normalize(a, b).unwrap();
        for n in 1..=6u64 {
            let g = gelman_count(&p, n).unwrap();
            let s = semidirect_count(&p, n).unwrap();
            let o = oracle_counts(&p, n as usize).unwrap().subgroups;
            if g != s || g != o {
                mismatches.push(format!("BS({a},{b}) n={n}: gelman={g} semidirect={s} oracle={o}"));
            }
        }
    }
    let ok = mismatches.is_empty() && within(start, Duration::from_secs(300));
    report(
        1,
        "Gelman = semidirect = oracle, n<=6",
        ok,
        format!("{:?} in {:.1?}", mismatches, start.elapsed()),
    );
}

#[test]
fn ac02_maximal_coprime() {
    let p = normalize(2, 3).unwrap();
    let mut formula = Vec::new();
    let mut oracle = Vec::new();
    for n in 2..=5u64 {
        formula.push(max_count_coprime(&p, n).unwrap());
        oracle.push(oracle_counts(&p, n as usize).unwrap().maximal);
    }
    let expected: Vec<BigUint> = [0u32, 0, 0, 6].map(BigUint::from).to_vec();
    let ok = formula == oracle && formula == expected;
    report(
        2,
        "BS(2,3) maximal counts n=2..5",
        ok,
        format!("formula={formula:?} oracle={oracle:?}"),
    );
}

#[test]
fn ac03_free_product_exactness() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for m in [2u64, 3] {
        let hall = free_product_subgroups(m, 6).unwrap();
        for n in 1..=6usize {
            let o = oracle_free_product(m, n).unwrap().subgroups;
            if hall.get(n as u64) != Some(&o) {
                mismatches.push(format!("m={m} n={n}: hall={:?} oracle={o}", hall.get(n as u64)));
            }
        }
    }
    let m2 = free_product_subgroups(2, 3).unwrap();
    let anchors = m2.get(2) == Some(&BigUint::from(3u32)) && m2.get(3) == Some(&BigUint::from(7u32));
    let ok = mismatches.is_empty() && anchors && within(start, Duration::from_secs(600));
    report(
        3,
        "Hall(Z*Z/mZ) = oracle, m in {2,3}, n<=6",
        ok,
        format!("{mismatches:?}, anchors a2=3,a3=7: {anchors}, {:.1?}", start.elapsed()),
    );
}

#[test]
fn ac04_hom_count_recurrence() {
    let mut mismatches = Vec::new();
    for m in [2u64, 3, 4, 6] {
        for n in 0..=7usize {
            let rec = count_order_dividing(m, n as u64).unwrap();
            let brute = if n == 0 {
                BigUint::from(1u32)
            } else {
                brute_order_dividing(m, n)
            };
            if rec != brute {
                mismatches.push(format!("m={m} n={n}: {rec} vs {brute}"));
            }
        }
    }
    let prefix = OrderDividingCounts::new(2).unwrap().prefix(6).to_vec();
    let anchor = prefix == [1u32, 1, 2, 4, 10, 26, 76].map(BigUint::from);
    report(
        4,
        "E_m recurrence = exhaustive count",
        mismatches.is_empty() && anchor,
        format!("{mismatches:?}, E_2 prefix {prefix:?}"),
    );
}

#[test]
fn ac05_order_dividing_asymptotic() {
    let start = Instant::now();
    let mut detail = String::new();
    let mut ok = true;
    for m in [2u64, 3] {
        let mut table = OrderDividingCounts::new(m).unwrap();
        table.extend_to(2000);
        let at100 = (ratio_to_main_term(table.get(100), m, 100, MainTerm::F).unwrap() - 1.0).abs();
        let at2000 = (ratio_to_main_term(table.get(2000), m, 2000, MainTerm::F).unwrap() - 1.0).abs();
        ok &= at2000 < at100 && at2000 <= 0.1;
        detail += &format!("m={m}: |E/f-1| n=100 {at100:.5}, n=2000 {at2000:.5}; ");
    }
    ok &= within(start, Duration::from_secs(60));
    report(5, "E_m(n)/f(n) -> 1", ok, format!("{detail}{:.1?}", start.elapsed()));
}

#[test]
fn ac06_main_theorem_convergence() {
    let start = Instant::now();
    let hom = free_product_hom_sequence(2, 500).unwrap();
    let (_, a) = hall_counts(&hom, GroupDescriptor::FreeProductZmodM(2)).unwrap();
    let at50 = (ratio_to_main_term(a.get(50).unwrap(), 2, 50, MainTerm::G).unwrap() - 1.0).abs();
    let at500 = (ratio_to_main_term(a.get(500).unwrap(), 2, 500, MainTerm::G).unwrap() - 1.0).abs();
    let ok = at500 < 0.15 && at500 < at50 && within(start, Duration::from_secs(120));
    report(
        6,
        "a_n(Z*Z/2Z)/g(n) -> 1",
        ok,
        format!("n=50 {at50:.5}, n=500 {at500:.5}, {:.1?}", start.elapsed()),
    );
}

#[test]
fn ac07_fixed_point_proposition() {
    let grid = [50u64, 100, 200, 400, 800];
    let ratios: Vec<f64> = grid.iter().map(|&n| census_ratio(2, n).unwrap()).collect();
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let ok = decreasing && ratios[4] < 1e-6;
    report(
        7,
        "census ratio B(n)/M(n) decays",
        ok,
        format!("{:?}", grid.iter().zip(&ratios).collect::<Vec<_>>()),
    );
}

#[test]
fn ac08_decay_lemmas() {
    let grid = [1000u64, 3000, 10_000];
    let q46: Vec<f64> = grid.iter().map(|&n| lemma46_quantity(2, n).unwrap().log10()).collect();
    let q58: Vec<f64> = grid.iter().map(|&n| lemma58_quantity(2, n).unwrap().log10()).collect();
    let ok = q46[2] < -100.0
        && q58[2] < -100.0
        && q46.windows(2).all(|w| w[1] < w[0])
        && q58.windows(2).all(|w| w[1] < w[0]);
    report(
        8,
        "decay quantities",
        ok,
        format!("log10 lemma46 {q46:?}, lemma58 {q58:?}"),
    );
}

#[test]
fn ac09_quotient_monotonicity() {
    let p = normalize(2, 4).unwrap();
    let free = free_product_subgroups(2, 6).unwrap();
    let mut detail = Vec::new();
    let mut ok = true;
    for n in 1..=6usize {
        let o = oracle_counts(&p, n).unwrap();
        let hall = free.get(n as u64).unwrap();
        ok &= &o.subgroups >= hall && o.maximal <= o.subgroups;
        detail.push(format!("n={n}: BS a={} m={} Z*Z/2Z a={hall}", o.subgroups, o.maximal));
    }
    report(9, "a_n(BS(2,4)) >= a_n(Z*Z/2Z), m_n <= a_n", ok, detail.join("; "));
}

#[test]
fn ac10_babai_hayes_probe() {
    let start = Instant::now();
    let s = monte_carlo_generation(2, 12, 500, 42).unwrap();
    let frac = s.fraction_given_few_fixed.unwrap_or(0.0);
    let ok = frac >= 0.9 && within(start, Duration::from_secs(120));
    report(
        10,
        "Monte Carlo generation m=2 n=12 seed=42",
        ok,
        format!(
            "given few fixed {frac:.4} ({}/{}), overall {:.4}, {:.1?}",
            s.few_fixed_alt_or_sym,
            s.few_fixed_trials,
            s.fraction_alt_or_sym,
            start.elapsed()
        ),
    );
}

#[test]
fn ac11_performance() {
    let p = normalize(2, 3).unwrap();
    let start = Instant::now();
    let series = gelman_series(&p, 1_000_000).unwrap();
    let gelman_time = start.elapsed();
    let spot = series.get(1_000_000).unwrap() == &gelman_count(&p, 1_000_000).unwrap();

    let start = Instant::now();
    let mut table = OrderDividingCounts::new(2).unwrap();
    let digits = table.get(5000).to_string().len();
    let e_time = start.elapsed();

    let ok = spot && gelman_time < Duration::from_secs(30) && e_time < Duration::from_secs(300);
    report(
        11,
        "performance",
        ok,
        format!("gelman to 1e6 {gelman_time:.2?}, E_2(5000) ({digits} digits) {e_time:.2?}"),
    );
}
