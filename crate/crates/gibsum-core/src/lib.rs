//! Exact GCDs of sums of `k` consecutive `p`-th powers of generalized
//! Fibonacci (Gibonacci) numbers.
//!
//! A Gibonacci sequence follows `G_n = G_{n-1} + G_{n-2}` from arbitrary
//! integer seeds `(G_0, G_1)`; Fibonacci is `(0, 1)` and Lucas is `(2, 1)`.
//! For a window length `k` and power `p`, the quantity of interest is the
//! GCD of the infinite family of window sums `S_n = sum_{i=1..k} G_{n+i}^p`.
//!
//! The crate provides, for every seed pair:
//!
//! - a truncated brute-force oracle (exact for `p <= 2`, where three windows
//!   already determine the full GCD, and stability-flagged for `p >= 3`);
//! - exact closed forms for squares: the three-term formula, the even/odd
//!   parity split, and the full case classification (`F_k` / `5 F_k` for even
//!   `k`, `gcd(2 mu, g_k)` for odd `k`, rescaled by `d^2` for non-coprime
//!   seeds);
//! - the first-power closed form `gcd(G_{k+1} - G_1, G_{k+2} - G_2)`;
//! - generalized Pisano periods, identity checkers, and the exploration
//!   reports (closed-form tables, cube-sum conjecture evidence, odd-`k`
//!   periodicity search) behind the `gibsum` command-line tool;
//! - a verification grid that cross-checks every closed form against the
//!   oracle across thousands of seed pairs.
//!
//! All arithmetic is exact `BigInt`; no floating point anywhere.

mod error;

pub mod explore;
pub mod gcd;
pub mod identity;
pub mod pisano;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use explore::{
    conjecture_cubes, periodicity_search, table_rows, ConjectureFactor, ConjectureReport,
    CubeSetting, PeriodicityReport, SumPower, TableRow,
};
pub use gcd::{
    classify_squares_gcd, classify_squares_gcd_with_windows, fib_squares_gcd,
    first_power_gcd_closed, lucas_squares_gcd, odd_k_maximality, oracle_gcd, oracle_gcd_report,
    squares_gcd_closed, squares_gcd_parity, CaseTag, GcdClassification, OddKReport, OracleGcd,
    DEFAULT_ORACLE_WINDOWS,
};
pub use identity::{Identity, IdentityOutcome};
pub use pisano::{fib_pisano, lucas_pisano, pisano_period, PisanoResult};
pub use sequences::{
    beta_term, d_function, fib, gamma_term, gcd_all, lucas, window_sum, window_sum_squares_closed,
    GibonacciSpec, WindowSpec,
};
pub use verify::{coprime_seed_grid, FamilyOutcome, VerifyConfig};

/// Re-exported so downstream users share one big-integer type.
pub use num_bigint::BigInt;
