use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared by the sequence, GCD, period, and exploration APIs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Initial values (0, 0) generate the all-zero sequence, so every window
    /// sum is zero and the GCD degenerates.
    #[error("degenerate sequence: initial values (0, 0) make every window sum zero")]
    DegenerateSpec,

    #[error("window length k must be at least 1")]
    ZeroWindowLength,

    /// Window lengths beyond the 64-bit index range denote terms with more
    /// digits than could ever be materialized.
    #[error("window length {0} exceeds the supported index range")]
    WindowTooLong(u64),

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("the window-GCD oracle needs at least 3 windows, got {0}")]
    TooFewWindows(u64),

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("identity `{identity}` requires {requirement}")]
    OutOfDomain {
        identity: &'static str,
        requirement: &'static str,
    },

    #[error("k must be odd, got {0}")]
    EvenK(u64),

    #[error("k_max must be even and at least 2, got {0}")]
    BadCubeRange(u64),

    #[error("k_max must be odd and at least 31, got {0}")]
    BadPeriodicityRange(u64),

    #[error("k range must satisfy 1 <= k_min <= k_max, got {k_min}..={k_max}")]
    BadTableRange { k_min: u64, k_max: u64 },

    /// Initial values share a common factor; the closed-form case tables only
    /// apply to coprime seeds.
    #[error(
        "initial values ({}, {}) share the factor {}; \
         reduce to ({}, {}) first and rescale the result",
        .0.g0, .0.g1, .0.common, .0.reduced_g0, .0.reduced_g1
    )]
    NonPrimitiveSpec(Box<SeedReduction>),

    /// A closed form disagreed with the brute-force oracle. This indicates a
    /// bug, never an expected outcome for powers 1 and 2.
    #[error("closed form {closed} disagrees with the {windows}-window oracle {oracle} at k = {k}")]
    OracleMismatch {
        k: u64,
        closed: BigInt,
        oracle: BigInt,
        windows: u64,
    },

    /// Internal invariant: the residue-pair orbit modulo m is purely periodic
    /// with period at most 6m, so this is unreachable for correct code.
    #[error("residue orbit modulo {modulus} failed to close within {cap} steps")]
    PeriodOverrun { modulus: u64, cap: u64 },
}

/// Payload of [`Error::NonPrimitiveSpec`], boxed to keep the error small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedReduction {
    pub g0: BigInt,
    pub g1: BigInt,
    pub common: BigInt,
    pub reduced_g0: BigInt,
    pub reduced_g1: BigInt,
}

pub type Result<T> = std::result::Result<T, Error>;
