//! Term computation for Gibonacci sequences (`G_n = G_{n-1} + G_{n-2}` with
//! arbitrary integer seeds), the characteristic invariant, windowed power
//! sums, and the auxiliary beta/gamma combinations used by the closed forms.
//!
//! Indices are signed throughout: negative indices follow the backward
//! recurrence `G_{n-2} = G_n - G_{n-1}`, the unique extension consistent with
//! the defining recurrence.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `(F_n, F_{n+1})` for `n >= 0` by binary fast doubling, O(log n) multiplies.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    let mut a = BigInt::zero(); // F_0
    let mut b = BigInt::one(); // F_1
    if n == 0 {
        return (a, b);
    }
    let bits = 64 - n.leading_zeros() as u64;
    for i in (0..bits).rev() {
        // (a, b) = (F_m, F_{m+1});  F_{2m} = F_m (2 F_{m+1} - F_m),
        // F_{2m+1} = F_m^2 + F_{m+1}^2
        let doubled = &a * ((&b << 1u32) - &a);
        let doubled_next = &a * &a + &b * &b;
        if (n >> i) & 1 == 1 {
            b = doubled + &doubled_next;
            a = doubled_next;
        } else {
            a = doubled;
            b = doubled_next;
        }
    }
    (a, b)
}

/// Signed-index Fibonacci via `F_{-n} = (-1)^{n+1} F_n`.
///
/// Takes `i128` so callers can form `n - 1` and `m + n` without overflow
/// checks; magnitudes beyond `u64` are rejected (such terms would have ~10^18
/// digits and are not computable anyway).
pub(crate) fn fib_signed(n: i128) -> BigInt {
    let magnitude = u64::try_from(n.unsigned_abs())
        .expect("Fibonacci index magnitude exceeds u64; term is not representable");
    let f = fib_pair(magnitude).0;
    if n < 0 && magnitude % 2 == 0 {
        -f
    } else {
        f
    }
}

/// `F_n` with `F_0 = 0`, `F_1 = 1`, extended to negative indices.
pub fn fib(n: i64) -> BigInt {
    fib_signed(n as i128)
}

/// `L_n` with `L_0 = 2`, `L_1 = 1`, extended via `L_{-n} = (-1)^n L_n`.
pub fn lucas(n: i64) -> BigInt {
    let magnitude = n.unsigned_abs();
    let (f, f_next) = fib_pair(magnitude);
    // L_m = 2 F_{m+1} - F_m
    let l = (&f_next << 1u32) - &f;
    if n < 0 && magnitude % 2 == 1 {
        -l
    } else {
        l
    }
}

/// Seed pair `(G_0, G_1)` of a Gibonacci sequence.
///
/// Fibonacci is `(0, 1)` and Lucas is `(2, 1)`. The characteristic and the
/// primitivity flag are recomputed from the seeds on every call, so they can
/// never drift out of sync with the fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GibonacciSpec {
    g0: BigInt,
    g1: BigInt,
}

impl GibonacciSpec {
    pub fn new(g0: impl Into<BigInt>, g1: impl Into<BigInt>) -> Self {
        Self {
            g0: g0.into(),
            g1: g1.into(),
        }
    }

    /// The `(0, 1)` seed.
    pub fn fibonacci() -> Self {
        Self::new(0, 1)
    }

    /// The `(2, 1)` seed.
    pub fn lucas() -> Self {
        Self::new(2, 1)
    }

    pub fn g0(&self) -> &BigInt {
        &self.g0
    }

    pub fn g1(&self) -> &BigInt {
        &self.g1
    }

    /// Both seeds zero: the whole sequence is zero and window GCDs degenerate.
    pub fn is_degenerate(&self) -> bool {
        self.g0.is_zero() && self.g1.is_zero()
    }

    pub(crate) fn ensure_not_degenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateSpec)
        } else {
            Ok(())
        }
    }

    /// The characteristic `mu = G_1^2 - G_0 G_1 - G_0^2` (may be negative).
    ///
    /// Zero only for the degenerate seed `(0, 0)`.
    pub fn characteristic(&self) -> BigInt {
        &self.g1 * &self.g1 - &self.g0 * &self.g1 - &self.g0 * &self.g0
    }

    /// `gcd(|G_0|, |G_1|)`; zero only for the degenerate seed.
    pub fn seed_gcd(&self) -> BigInt {
        self.g0.gcd(&self.g1)
    }

    /// Seeds are coprime.
    pub fn is_primitive(&self) -> bool {
        self.seed_gcd().is_one()
    }

    /// Divide out `d = gcd(|G_0|, |G_1|)`, returning `(d, (G_0/d, G_1/d))`.
    pub fn reduce_to_primitive(&self) -> Result<(BigInt, GibonacciSpec)> {
        self.ensure_not_degenerate()?;
        let d = self.seed_gcd();
        let reduced = GibonacciSpec::new(&self.g0 / &d, &self.g1 / &d);
        Ok((d, reduced))
    }

    pub(crate) fn ensure_primitive(&self) -> Result<()> {
        self.ensure_not_degenerate()?;
        let d = self.seed_gcd();
        if d.is_one() {
            Ok(())
        } else {
            Err(Error::NonPrimitiveSpec(Box::new(
                crate::error::SeedReduction {
                    g0: self.g0.clone(),
                    g1: self.g1.clone(),
                    reduced_g0: &self.g0 / &d,
                    reduced_g1: &self.g1 / &d,
                    common: d,
                },
            )))
        }
    }

    /// `G_n` in O(log |n|) via `G_n = G_0 F_{n-1} + G_1 F_n`.
    pub fn term(&self, n: i64) -> BigInt {
        self.term_signed(n as i128)
    }

    pub(crate) fn term_signed(&self, n: i128) -> BigInt {
        &self.g0 * fib_signed(n - 1) + &self.g1 * fib_signed(n)
    }

    /// `G_n` by plain recurrence unrolling in both directions. Slow reference
    /// path kept as the oracle for [`GibonacciSpec::term`].
    pub fn term_iterative(&self, n: i64) -> BigInt {
        let (mut a, mut b) = (self.g0.clone(), self.g1.clone());
        if n >= 0 {
            for _ in 0..n {
                let next = &a + &b;
                a = std::mem::replace(&mut b, next);
            }
        } else {
            for _ in 0..n.unsigned_abs() {
                let prev = &b - &a;
                b = std::mem::replace(&mut a, prev);
            }
        }
        a
    }
}

impl std::fmt::Display for GibonacciSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.g0, self.g1)
    }
}

/// A window of `k` consecutive terms starting at index `start + 1`, each
/// raised to `power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    k: u64,
    power: u32,
    start: u64,
}

impl WindowSpec {
    pub fn new(k: u64, power: u32, start: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroWindowLength);
        }
        if power == 0 {
            return Err(Error::ZeroPower);
        }
        Ok(Self { k, power, start })
    }

    pub fn squares(k: u64, start: u64) -> Result<Self> {
        Self::new(k, 2, start)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn start(&self) -> u64 {
        self.start
    }
}

/// `S_n = sum_{i=1..k} G_{n+i}^p` by direct summation.
pub fn window_sum(spec: &GibonacciSpec, window: &WindowSpec) -> BigInt {
    let first = window.start as i128 + 1;
    let mut a = spec.term_signed(first);
    let mut b = spec.term_signed(first + 1);
    let mut total = a.pow(window.power);
    for _ in 1..window.k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
        total += a.pow(window.power);
    }
    total
}

/// Telescoped form of the squares window sum:
/// `S_n = G_{n+k} G_{n+k+1} - G_n G_{n+1}`. Must agree with
/// [`window_sum`] at power 2 for every input.
pub fn window_sum_squares_closed(spec: &GibonacciSpec, k: u64, start: u64) -> BigInt {
    let n = start as i128;
    let top = n + k as i128;
    spec.term_signed(top) * spec.term_signed(top + 1)
        - spec.term_signed(n) * spec.term_signed(n + 1)
}

/// `D(n) = G_{n+1}^2 - G_n G_{n+1} - G_n^2`, which equals `(-1)^n mu`.
pub fn d_function(spec: &GibonacciSpec, n: u64) -> BigInt {
    let i = n as i128;
    let g = spec.term_signed(i);
    let g_next = spec.term_signed(i + 1);
    &g_next * &g_next - &g * &g_next - &g * &g
}

fn beta_signed(spec: &GibonacciSpec, n: i128) -> BigInt {
    let g0 = spec.g0();
    let g1 = spec.g1();
    g0 * g0 * fib_signed(n)
        + BigInt::from(2) * g0 * g1 * fib_signed(n + 1)
        + g1 * g1 * fib_signed(n + 2)
}

/// `beta_n = G_0^2 F_n + 2 G_0 G_1 F_{n+1} + G_1^2 F_{n+2}`; itself a
/// Gibonacci sequence (`beta_{n+2} = beta_n + beta_{n+1}`).
pub fn beta_term(spec: &GibonacciSpec, n: u64) -> BigInt {
    beta_signed(spec, n as i128)
}

/// `gamma_{k,l} = G_0^2 F_{k+2l-2} + 2 G_0 G_1 F_{k+2l-1} + G_1^2 F_{k+2l}`,
/// i.e. `beta_{k+2l-2}`.
pub fn gamma_term(spec: &GibonacciSpec, k: u64, l: u64) -> BigInt {
    beta_signed(spec, k as i128 + 2 * l as i128 - 2)
}

/// Non-negative fold of `gcd` over any collection; empty input gives 0 and
/// `gcd(0, x) = |x|`, so telescoping GCD identities hold for inputs of any
/// sign.
pub fn gcd_all<I>(values: I) -> BigInt
where
    I: IntoIterator<Item = BigInt>,
{
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v))
}
