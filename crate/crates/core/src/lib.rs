//! Exact and asymptotic subgroup growth for Baumslag–Solitar groups
//! `BS(a,b) = <x, y | y^-1 x^a y = x^b>` and the free products `Z * Z/mZ`.
//!
//! The crate is organised as:
//!
//! * [`numth`]: big-integer combinatorics and elementary number theory;
//! * [`growth`]: exact counting sequences (Hall sieve, Gelman's divisor
//!   sum, the derivation-sum path, fixed-point censuses);
//! * [`asymptotic`]: log-space main terms and decay diagnostics;
//! * [`permgrp`]: a brute-force permutation-representation oracle,
//!   Schreier–Sims group orders and a seeded Monte Carlo generation probe.

pub mod asymptotic;
mod error;
pub mod growth;
mod logspace;
pub mod numth;
pub mod permgrp;

pub use error::{Error, Result};
pub use growth::{BsParams, FixCensus, GroupDescriptor, GrowthSeries, Method, SeriesKind};
pub use logspace::LogValue;
pub use permgrp::{OracleCounts, Permutation};

pub use num_bigint::{BigInt, BigUint};
