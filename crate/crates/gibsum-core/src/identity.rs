//! Evaluators for the classical identities the closed-form GCD results rest
//! on. Each check computes both sides independently and reports whether they
//! agree; a parameter outside an identity's domain is an error, never a
//! `holds = false` outcome.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::sequences::{fib_signed, gamma_term, window_sum, GibonacciSpec, WindowSpec};

/// Both sides of an identity instance, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

impl IdentityOutcome {
    fn of(lhs: BigInt, rhs: BigInt) -> Self {
        let holds = lhs == rhs;
        Self { lhs, rhs, holds }
    }
}

/// One concrete identity instance with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identity {
    /// `G_{n+1} G_{n-1} - G_n^2 = (-1)^n mu` for `n >= 1`.
    Cassini { spec: GibonacciSpec, n: i64 },
    /// `F_n^2 - F_{n-r} F_{n+r} = (-1)^{n-r} F_r^2` for `n >= r`.
    Catalan { n: i64, r: i64 },
    /// `G_{m+n} = G_{m+1} F_n + G_m F_{n-1}` for all integers `m`, `n`.
    Vajda8 { spec: GibonacciSpec, m: i64, n: i64 },
    /// `F_{a+b} F_{a+c} - (-1)^a F_b F_c = F_a F_{a+b+c}` for `a, b, c >= 0`.
    Vajda20a { a: u64, b: u64, c: u64 },
    /// `sum_{i=1..k} G_i^2 = G_k G_{k+1} - G_0 G_1` for `k >= 1`.
    SumSquares { spec: GibonacciSpec, k: u64 },
    /// `F_{k+l}^2 - F_l^2 = F_k F_{k+2l}` for even `k >= 0`.
    FibDiffSquares { k: u64, l: i64 },
    /// `G_{k+l}^2 - G_l^2 = F_k gamma_{k,l}` for even `k >= 0`, `l >= 0`.
    GibDiffSquares { spec: GibonacciSpec, k: u64, l: u64 },
    /// `(G_k^2 - G_0^2) - 3 (G_{k+1}^2 - G_1^2) + (G_{k+2}^2 - G_2^2)` equals
    /// `0` for even `k` and `4 mu` for odd `k`, `k >= 1`.
    ZeroVs4Mu { spec: GibonacciSpec, k: u64 },
}

impl Identity {
    pub fn name(&self) -> &'static str {
        match self {
            Identity::Cassini { .. } => "cassini",
            Identity::Catalan { .. } => "catalan",
            Identity::Vajda8 { .. } => "vajda8",
            Identity::Vajda20a { .. } => "vajda20a",
            Identity::SumSquares { .. } => "sum_squares",
            Identity::FibDiffSquares { .. } => "fib_diff_squares",
            Identity::GibDiffSquares { .. } => "gib_diff_squares",
            Identity::ZeroVs4Mu { .. } => "zero_vs_4mu",
        }
    }

    pub fn check(&self) -> Result<IdentityOutcome> {
        match self {
            Identity::Cassini { spec, n } => {
                if *n < 1 {
                    return Err(self.domain_error("n >= 1"));
                }
                let n = *n as i128;
                let lhs = spec.term_signed(n + 1) * spec.term_signed(n - 1)
                    - spec.term_signed(n) * spec.term_signed(n);
                let rhs = negate_if_odd(spec.characteristic(), n);
                Ok(IdentityOutcome::of(lhs, rhs))
            }
            Identity::Catalan { n, r } => {
                if n < r {
                    return Err(self.domain_error("n >= r"));
                }
                let (n, r) = (*n as i128, *r as i128);
                let f_n = fib_signed(n);
                let f_r = fib_signed(r);
                let lhs = &f_n * &f_n - fib_signed(n - r) * fib_signed(n + r);
                let rhs = negate_if_odd(&f_r * &f_r, n - r);
                Ok(IdentityOutcome::of(lhs, rhs))
            }
            Identity::Vajda8 { spec, m, n } => {
                let (m, n) = (*m as i128, *n as i128);
                let lhs = spec.term_signed(m + n);
                let rhs = spec.term_signed(m + 1) * fib_signed(n)
                    + spec.term_signed(m) * fib_signed(n - 1);
                Ok(IdentityOutcome::of(lhs, rhs))
            }
            Identity::Vajda20a { a, b, c } => {
                let (a, b, c) = (*a as i128, *b as i128, *c as i128);
                let lhs = fib_signed(a + b) * fib_signed(a + c)
                    - negate_if_odd(fib_signed(b) * fib_signed(c), a);
                let rhs = fib_signed(a) * fib_signed(a + b + c);
                Ok(IdentityOutcome::of(lhs, rhs))
            }
            Identity::SumSquares { spec, k } => {
                if *k == 0 {
                    return Err(self.domain_error("k >= 1"));
                }
                let lhs = window_sum(spec, &WindowSpec::squares(*k, 0)?);
                let k = *k as i128;
                let rhs = spec.term_signed(k) * spec.term_signed(k + 1) - spec.g0() * spec.g1();
                Ok(IdentityOutcome::of(lhs, rhs))
            }
            Identity::FibDiffSquares { k, l } => {
                if k % 2 != 0 {
                    return Err(self.domain_error("even k"));
                }
                let (k, l) = (*k as i128, *l as i128);
                let f_kl = fib_signed(k + l);
                let f_l = fib_signed(l);
                let lhs = &f_kl * &f_kl - &f_l * &f_l;
                let rhs = fib_signed(k) * fib_signed(k + 2 * l);
                Ok(IdentityOutcome::of(lhs, rhs))
            }
            Identity::GibDiffSquares { spec, k, l } => {
                if k % 2 != 0 {
                    return Err(self.domain_error("even k"));
                }
                let gamma = gamma_term(spec, *k, *l);
                let (k, l) = (*k as i128, *l as i128);
                let g_kl = spec.term_signed(k + l);
                let g_l = spec.term_signed(l);
                let lhs = &g_kl * &g_kl - &g_l * &g_l;
                let rhs = fib_signed(k) * gamma;
                Ok(IdentityOutcome::of(lhs, rhs))
            }
            Identity::ZeroVs4Mu { spec, k } => {
                if *k == 0 {
                    return Err(self.domain_error("k >= 1"));
                }
                let k = *k as i128;
                let diff = |i: i128| {
                    let high = spec.term_signed(k + i);
                    let low = spec.term_signed(i);
                    &high * &high - &low * &low
                };
                let lhs = diff(0) - BigInt::from(3) * diff(1) + diff(2);
                let rhs = if k % 2 == 0 {
                    BigInt::zero()
                } else {
                    BigInt::from(4) * spec.characteristic()
                };
                Ok(IdentityOutcome::of(lhs, rhs))
            }
        }
    }

    fn domain_error(&self, requirement: &'static str) -> Error {
        Error::OutOfDomain {
            identity: self.name(),
            requirement,
        }
    }
}

fn negate_if_odd(value: BigInt, exponent: i128) -> BigInt {
    if exponent % 2 == 0 {
        value
    } else {
        -value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fib_spec() -> GibonacciSpec {
        GibonacciSpec::fibonacci()
    }

    #[test]
    fn cassini_example() {
        let out = Identity::Cassini {
            spec: fib_spec(),
            n: 3,
        }
        .check()
        .unwrap();
        assert_eq!(out.lhs, BigInt::from(-1));
        assert_eq!(out.rhs, BigInt::from(-1));
        assert!(out.holds);
    }

    #[test]
    fn zero_vs_4mu_examples() {
        let even = Identity::ZeroVs4Mu {
            spec: GibonacciSpec::new(2, 7),
            k: 6,
        }
        .check()
        .unwrap();
        assert!(even.holds);
        assert_eq!(even.rhs, BigInt::zero());

        let odd = Identity::ZeroVs4Mu {
            spec: GibonacciSpec::lucas(),
            k: 3,
        }
        .check()
        .unwrap();
        assert!(odd.holds);
        assert_eq!(odd.rhs, BigInt::from(-20));
    }

    #[test]
    fn domain_violations_are_errors() {
        assert!(matches!(
            Identity::FibDiffSquares { k: 3, l: 5 }.check(),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            Identity::Catalan { n: 2, r: 5 }.check(),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            Identity::Cassini {
                spec: fib_spec(),
                n: 0
            }
            .check(),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            Identity::SumSquares {
                spec: fib_spec(),
                k: 0
            }
            .check(),
            Err(Error::OutOfDomain { .. })
        ));
    }

    fn arb_spec() -> impl Strategy<Value = GibonacciSpec> {
        (-20i64..=20, -20i64..=20).prop_map(|(a, b)| GibonacciSpec::new(a, b))
    }

    fn assert_holds(identity: Identity) -> std::result::Result<(), TestCaseError> {
        let outcome = identity.check().unwrap();
        prop_assert!(
            outcome.holds,
            "{:?}: lhs {} != rhs {}",
            identity,
            outcome.lhs,
            outcome.rhs
        );
        Ok(())
    }

    proptest! {
        #[test]
        fn cassini_holds(spec in arb_spec(), n in 1i64..=80) {
            assert_holds(Identity::Cassini { spec, n })?;
        }

        #[test]
        fn catalan_holds(n in -40i64..=80, delta in 0i64..=60) {
            assert_holds(Identity::Catalan { n, r: n - delta })?;
        }

        #[test]
        fn vajda8_holds(spec in arb_spec(), m in -40i64..=40, n in -40i64..=40) {
            assert_holds(Identity::Vajda8 { spec, m, n })?;
        }

        #[test]
        fn vajda20a_holds(a in 0u64..=60, b in 0u64..=60, c in 0u64..=60) {
            assert_holds(Identity::Vajda20a { a, b, c })?;
        }

        #[test]
        fn sum_squares_holds(spec in arb_spec(), k in 1u64..=60) {
            assert_holds(Identity::SumSquares { spec, k })?;
        }

        #[test]
        fn fib_diff_squares_holds(half_k in 0u64..=30, l in -40i64..=40) {
            assert_holds(Identity::FibDiffSquares { k: 2 * half_k, l })?;
        }

        #[test]
        fn gib_diff_squares_holds(spec in arb_spec(), half_k in 0u64..=30, l in 0u64..=40) {
            assert_holds(Identity::GibDiffSquares { spec, k: 2 * half_k, l })?;
        }

        #[test]
        fn zero_vs_4mu_holds(spec in arb_spec(), k in 1u64..=80) {
            assert_holds(Identity::ZeroVs4Mu { spec, k })?;
        }
    }
}
