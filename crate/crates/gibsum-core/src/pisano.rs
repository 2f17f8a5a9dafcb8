//! Period of a Gibonacci sequence modulo `m`: the smallest `r >= 1` with
//! `G_r = G_0` and `G_{r+1} = G_1 (mod m)`. The residue-pair map
//! `(a, b) -> (b, a + b mod m)` is invertible, so every orbit is purely
//! periodic and the first return time is the period.

use num_integer::Integer as _;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::sequences::GibonacciSpec;

/// Period of a Gibonacci sequence modulo `m`, with the witnessing seed pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PisanoResult {
    pub modulus: u64,
    pub period: u64,
    /// `(G_0 mod m, G_1 mod m)`, the pair the orbit returns to.
    pub residue_seed: (u64, u64),
}

/// First return time of the residue-pair orbit; divides the Fibonacci period
/// of the same modulus. The scan itself certifies minimality: every step
/// before the return is checked against the seed pair.
pub fn pisano_period(spec: &GibonacciSpec, modulus: u64) -> Result<PisanoResult> {
    if modulus < 2 {
        return Err(Error::BadModulus(modulus));
    }
    let m = num_bigint::BigInt::from(modulus);
    let seed = (
        spec.g0().mod_floor(&m).to_u64().expect("residue fits u64"),
        spec.g1().mod_floor(&m).to_u64().expect("residue fits u64"),
    );
    // The Fibonacci period modulo m is at most 6m, and every Gibonacci period
    // divides it; the cap guards the loop against implementation bugs only.
    let cap = (modulus as u128) * 6 + 2;
    let (mut a, mut b) = seed;
    let mut steps: u64 = 0;
    while (steps as u128) < cap {
        let next = ((a as u128 + b as u128) % modulus as u128) as u64;
        a = b;
        b = next;
        steps += 1;
        if (a, b) == seed {
            return Ok(PisanoResult {
                modulus,
                period: steps,
                residue_seed: seed,
            });
        }
    }
    Err(Error::PeriodOverrun {
        modulus,
        cap: cap.min(u64::MAX as u128) as u64,
    })
}

/// Fibonacci period modulo `m`.
pub fn fib_pisano(modulus: u64) -> Result<u64> {
    Ok(pisano_period(&GibonacciSpec::fibonacci(), modulus)?.period)
}

/// Lucas period modulo `m`.
pub fn lucas_pisano(modulus: u64) -> Result<u64> {
    Ok(pisano_period(&GibonacciSpec::lucas(), modulus)?.period)
}
