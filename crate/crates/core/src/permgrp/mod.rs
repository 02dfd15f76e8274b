//! Permutation-group machinery and the brute-force representation oracle.
//!
//! The oracle counts index-n subgroups of a finitely presented group by
//! enumerating `Hom(G, Sym(n))` directly and sieving transitive and primitive
//! images: a subgroup of index n is the point stabiliser of a transitive
//! action, and it is maximal exactly when that action is primitive.

mod action;
mod montecarlo;
mod oracle;
mod perm;
mod schreier;

pub use action::{is_primitive, is_transitive, orbits};
pub use montecarlo::{monte_carlo_generation, MonteCarloSummary, OrderDividingSampler};
pub use oracle::{conjugator_solutions, oracle_counts, oracle_free_product, OracleCounts, ORACLE_MAX_DEGREE};
pub use perm::{all_permutations, enumerate_order_dividing, visit_order_dividing, Permutation};
pub use schreier::{group_order, is_alt_or_sym};

/// Largest degree accepted by [`enumerate_order_dividing`].
pub const ENUMERATION_MAX_DEGREE: usize = 12;
