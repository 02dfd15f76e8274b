//! Seeded probe: how often does a uniform order-dividing-`m` element together
//! with a uniform permutation generate `Alt(n)` or `Sym(n)`?

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::perm::Permutation;
use super::schreier::is_alt_or_sym;
use crate::error::{invalid, Result};
use crate::growth::{few_fixed_threshold, fix_census};
use crate::numth::DivisorSet;

pub const MONTE_CARLO_MIN_DEGREE: usize = 3;
pub const MONTE_CARLO_MAX_DEGREE: usize = 20;

/// Uniform sampler on `{σ ∈ Sym(n) : σ^m = 1}`.
///
/// Draws the number of fixed points from the exact census, places the fixed
/// points uniformly, then builds a uniform fixed-point-free element on the
/// rest one cycle at a time.
#[derive(Clone, Debug)]
pub struct OrderDividingSampler {
    n: usize,
    census: Vec<u128>,
    cycle_lengths: Vec<usize>,
    /// fixed-point-free counts `F(0..=n)`
    free: Vec<u128>,
}

impl OrderDividingSampler {
    pub fn new(m: u64, n: usize) -> Result<Self> {
        if m < 2 || n == 0 || n > MONTE_CARLO_MAX_DEGREE {
            return Err(invalid!("sampler needs m >= 2 and 1 <= n <= {MONTE_CARLO_MAX_DEGREE}"));
        }
        let census = fix_census(m, n as u64)?
            .counts
            .iter()
            .map(|c| u128::try_from(c).expect("census fits u128 at n <= 20"))
            .collect();
        let cycle_lengths: Vec<usize> = DivisorSet::of(m)
            .iter()
            .filter(|&d| d >= 2)
            .map(|d| d as usize)
            .collect();
        let mut free = vec![1u128];
        for j in 1..=n {
            let mut acc = 0u128;
            for &d in cycle_lengths.iter().filter(|&&d| d <= j) {
                let arrangements: u128 = ((j - d + 1)..j).map(|x| x as u128).product();
                acc += arrangements * free[j - d];
            }
            free.push(acc);
        }
        Ok(OrderDividingSampler {
            n,
            census,
            cycle_lengths,
            free,
        })
    }

    fn weighted_index<R: Rng + ?Sized>(rng: &mut R, weights: &[u128]) -> usize {
        let total: u128 = weights.iter().sum();
        let mut r = rng.random_range(0..total);
        for (i, &w) in weights.iter().enumerate() {
            if r < w {
                return i;
            }
            r -= w;
        }
        unreachable!("weights exhausted")
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let n = self.n;
        let fixed = Self::weighted_index(rng, &self.census);
        let mut points: Vec<usize> = (0..n).collect();
        points.shuffle(rng);
        let mut images: Vec<usize> = (0..n).collect();
        let mut rest: Vec<usize> = points[fixed..].to_vec();
        while !rest.is_empty() {
            let j = rest.len();
            let head = rest.swap_remove(0);
            let weights: Vec<u128> = self
                .cycle_lengths
                .iter()
                .map(|&d| {
                    if d > j {
                        0
                    } else {
                        ((j - d + 1)..j).map(|x| x as u128).product::<u128>() * self.free[j - d]
                    }
                })
                .collect();
            let d = self.cycle_lengths[Self::weighted_index(rng, &weights)];
            let mut cycle = vec![head];
            for _ in 1..d {
                let idx = rng.random_range(0..rest.len());
                cycle.push(rest.swap_remove(idx));
            }
            for i in 0..d {
                images[cycle[i]] = cycle[(i + 1) % d];
            }
        }
        Permutation::from_vec_unchecked(images)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub m: u64,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// `⌊n / ln n⌋`
    pub fixed_point_threshold: u64,
    pub alt_or_sym: u64,
    pub few_fixed_trials: u64,
    pub few_fixed_alt_or_sym: u64,
    pub fraction_alt_or_sym: f64,
    /// `None` when no trial had few fixed points.
    pub fraction_given_few_fixed: Option<f64>,
}

/// Runs `trials` independent draws. Trial `i` uses ChaCha8 seeded with
/// `seed` on stream `i`, so results do not depend on thread scheduling.
pub fn monte_carlo_generation(m: u64, n: usize, trials: u64, seed: u64) -> Result<MonteCarloSummary> {
    if !(MONTE_CARLO_MIN_DEGREE..=MONTE_CARLO_MAX_DEGREE).contains(&n) {
        return Err(invalid!(
            "monte carlo degree must be in {MONTE_CARLO_MIN_DEGREE}..={MONTE_CARLO_MAX_DEGREE}, got {n}"
        ));
    }
    if trials == 0 {
        return Err(invalid!("trials must be >= 1"));
    }
    let sampler = OrderDividingSampler::new(m, n)?;
    let threshold = few_fixed_threshold(n as u64);

    let outcomes: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let g = sampler.sample(&mut rng);
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(&mut rng);
            let sigma = Permutation::from_vec_unchecked(images);
            let generates = is_alt_or_sym(&[g.clone(), sigma], n).expect("degree checked");
            (generates, g.fix_count() as u64 <= threshold)
        })
        .collect();

    let alt_or_sym = outcomes.iter().filter(|o| o.0).count() as u64;
    let few_fixed_trials = outcomes.iter().filter(|o| o.1).count() as u64;
    let few_fixed_alt_or_sym = outcomes.iter().filter(|o| o.0 && o.1).count() as u64;
    Ok(MonteCarloSummary {
        m,
        n,
        trials,
        seed,
        fixed_point_threshold: threshold,
        alt_or_sym,
        few_fixed_trials,
        few_fixed_alt_or_sym,
        fraction_alt_or_sym: alt_or_sym as f64 / trials as f64,
        fraction_given_few_fixed: (few_fixed_trials > 0).then(|| few_fixed_alt_or_sym as f64 / few_fixed_trials as f64),
    })
}
