//! Shared inputs for the criterion benches; see `benches/kernels.rs`.

use gibsum_core::GibonacciSpec;

/// Seed pairs exercised by the GCD benches.
pub fn bench_specs() -> Vec<GibonacciSpec> {
    vec![
        GibonacciSpec::fibonacci(),
        GibonacciSpec::lucas(),
        GibonacciSpec::new(2, 7),
        GibonacciSpec::new(-1, 3),
    ]
}
