//! GCDs of all sums of `k` consecutive `p`-th powers of a Gibonacci
//! sequence: the truncated brute-force oracle, the exact closed forms for
//! powers 1 and 2, the even/odd case classification, and the odd-`k`
//! maximality test.
//!
//! For squares the infinite GCD collapses to three terms,
//! `gcd(G_k G_{k+1} - G_0 G_1, G_{k+1}^2 - G_1^2, G_{k+2}^2 - G_2^2)`,
//! so a 3-window oracle is already exact; the default of 10 windows doubles
//! as a live truncation-stability assertion.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::sequences::{fib, gcd_all, GibonacciSpec};

/// Window count used when a caller asks for a cross-check without naming one.
pub const DEFAULT_ORACLE_WINDOWS: u64 = 10;

/// Reject `k = 0` and window lengths whose term indices cannot fit signed
/// 64-bit arithmetic, returning `k` ready for index math.
fn validate_k(k: u64) -> Result<i64> {
    if k == 0 {
        return Err(Error::ZeroWindowLength);
    }
    i64::try_from(k)
        .ok()
        .filter(|k| *k <= i64::MAX - 2)
        .ok_or(Error::WindowTooLong(k))
}

/// Running GCDs `gcd(S_0..S_n)` of the first `windows` window sums.
///
/// Non-increasing under divisibility; once the running value reaches 1 the
/// remaining entries are filled without further arithmetic.
pub(crate) fn oracle_prefix_gcds(
    spec: &GibonacciSpec,
    k: u64,
    power: u32,
    windows: u64,
) -> Result<Vec<BigInt>> {
    spec.ensure_not_degenerate()?;
    validate_k(k)?;
    if power == 0 {
        return Err(Error::ZeroPower);
    }
    if windows < 3 {
        return Err(Error::TooFewWindows(windows));
    }

    // Powered terms G_1^p .. G_{windows-1+k}^p, then slide the sum.
    let count =
        usize::try_from(windows as u128 - 1 + k as u128).map_err(|_| Error::WindowTooLong(k))?;
    let mut powered = Vec::with_capacity(count);
    let mut a = spec.g1().clone();
    let mut b = spec.term(2);
    powered.push(a.pow(power));
    for _ in 1..count {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
        powered.push(a.pow(power));
    }

    let mut sum: BigInt = powered[..k as usize].iter().sum();
    let mut acc = sum.abs();
    let mut prefix = Vec::with_capacity(windows as usize);
    prefix.push(acc.clone());
    for n in 1..windows as usize {
        if acc.is_one() {
            prefix.resize(windows as usize, acc.clone());
            break;
        }
        sum += &powered[n - 1 + k as usize] - &powered[n - 1];
        acc = acc.gcd(&sum);
        prefix.push(acc.clone());
    }
    Ok(prefix)
}

/// `gcd(S_0, ..., S_{windows-1})` where `S_n = sum_{i=1..k} G_{n+i}^p`.
///
/// Exact for powers 1 and 2 whenever `windows >= 3`; for higher powers it is
/// a truncation of an infinite GCD with no proven finite basis (see
/// [`oracle_gcd_report`] for the stability-flagged form).
pub fn oracle_gcd(spec: &GibonacciSpec, k: u64, power: u32, windows: u64) -> Result<BigInt> {
    let prefix = oracle_prefix_gcds(spec, k, power, windows)?;
    if power <= 2 {
        debug_assert_eq!(
            prefix[2],
            *prefix.last().unwrap(),
            "3-window basis violated"
        );
    }
    Ok(prefix.into_iter().next_back().unwrap())
}

/// Truncated oracle value plus a heuristic stability flag: stable means the
/// running GCD did not change over the last `ceil(windows / 2)` windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleGcd {
    pub value: BigInt,
    pub windows: u64,
    pub stable: bool,
}

pub fn oracle_gcd_report(
    spec: &GibonacciSpec,
    k: u64,
    power: u32,
    windows: u64,
) -> Result<OracleGcd> {
    let prefix = oracle_prefix_gcds(spec, k, power, windows)?;
    let tail = (windows as usize).div_ceil(2);
    let value = prefix.last().unwrap().clone();
    let stable = prefix[prefix.len() - tail] == value;
    Ok(OracleGcd {
        value,
        windows,
        stable,
    })
}

/// Exact squares GCD by the three-term formula
/// `gcd(G_k G_{k+1} - G_0 G_1, G_{k+1}^2 - G_1^2, G_{k+2}^2 - G_2^2)`.
pub fn squares_gcd_closed(spec: &GibonacciSpec, k: u64) -> Result<BigInt> {
    spec.ensure_not_degenerate()?;
    let k = validate_k(k)?;
    let square_diff = |i: i64| {
        let high = spec.term(k + i);
        let low = spec.term(i);
        &high * &high - &low * &low
    };
    Ok(gcd_all([
        spec.term(k) * spec.term(k + 1) - spec.g0() * spec.g1(),
        square_diff(1),
        square_diff(2),
    ]))
}

/// Exact squares GCD by the parity split: two square differences for even
/// `k`, with `2 mu` joining the GCD for odd `k`. Agrees with
/// [`squares_gcd_closed`] on every input.
pub fn squares_gcd_parity(spec: &GibonacciSpec, k: u64) -> Result<BigInt> {
    spec.ensure_not_degenerate()?;
    let k = validate_k(k)?;
    let square_diff = |i: i64| {
        let high = spec.term(k + i);
        let low = spec.term(i);
        &high * &high - &low * &low
    };
    let two_diffs = [square_diff(1), square_diff(2)];
    if k % 2 == 0 {
        Ok(gcd_all(two_diffs))
    } else {
        let two_mu = BigInt::from(2) * spec.characteristic();
        Ok(gcd_all([
            two_mu,
            two_diffs[0].clone(),
            two_diffs[1].clone(),
        ]))
    }
}

/// Which closed-form case produced a classified squares GCD.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Even `k`, 5 does not divide the primitive characteristic: value is `F_k`.
    EvenFiveNotDividesMu,
    /// Even `k`, 5 divides the primitive characteristic: value is `5 F_k`.
    EvenFiveDividesMu,
    /// Odd `k`: value is `gcd(2 mu, g_k)` and divides `|2 mu|`.
    OddGeneral,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::EvenFiveNotDividesMu => "EvenFiveNotDividesMu",
            CaseTag::EvenFiveDividesMu => "EvenFiveDividesMu",
            CaseTag::OddGeneral => "OddGeneral",
        }
    }
}

/// A squares GCD together with the case that produced it and the `d^2`
/// rescaling applied for non-coprime seeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdClassification {
    pub value: BigInt,
    pub case_tag: CaseTag,
    pub k: u64,
    pub spec: GibonacciSpec,
    /// `d^2` where `d = gcd(|G_0|, |G_1|)`; 1 for primitive seeds.
    pub scale_factor: BigInt,
    /// Set when a cross-check was requested: whether the brute-force oracle
    /// produced the same value.
    pub oracle_agrees: Option<bool>,
}

/// Classify `G^2(k)`: reduce the seeds to a coprime pair, apply the even-`k`
/// closed form (`F_k` or `5 F_k`) or the odd-`k` formula `gcd(2 mu, g_k)`,
/// and rescale by `d^2`. With `cross_check` the value is compared against a
/// [`DEFAULT_ORACLE_WINDOWS`]-window oracle run.
pub fn classify_squares_gcd(
    spec: &GibonacciSpec,
    k: u64,
    cross_check: bool,
) -> Result<GcdClassification> {
    classify_squares_gcd_with_windows(spec, k, cross_check.then_some(DEFAULT_ORACLE_WINDOWS))
}

/// [`classify_squares_gcd`] with an explicit oracle window count
/// (`None` skips the cross-check).
pub fn classify_squares_gcd_with_windows(
    spec: &GibonacciSpec,
    k: u64,
    oracle_windows: Option<u64>,
) -> Result<GcdClassification> {
    let ki = validate_k(k)?;
    let (d, primitive) = spec.reduce_to_primitive()?;
    let scale_factor = &d * &d;
    let mu = primitive.characteristic();
    let (raw, case_tag) = if k.is_multiple_of(2) {
        let f_k = fib(ki);
        if mu.is_multiple_of(&BigInt::from(5)) {
            (BigInt::from(5) * f_k, CaseTag::EvenFiveDividesMu)
        } else {
            (f_k, CaseTag::EvenFiveNotDividesMu)
        }
    } else {
        let square_diff = |i: i64| {
            let high = primitive.term(ki + i);
            let low = primitive.term(i);
            &high * &high - &low * &low
        };
        let g_k = square_diff(1).gcd(&square_diff(2));
        let two_mu = BigInt::from(2) * &mu;
        (two_mu.gcd(&g_k), CaseTag::OddGeneral)
    };
    let value = &scale_factor * raw;
    let oracle_agrees = match oracle_windows {
        Some(windows) => Some(oracle_gcd(spec, k, 2, windows)? == value),
        None => None,
    };
    Ok(GcdClassification {
        value,
        case_tag,
        k,
        spec: spec.clone(),
        scale_factor,
        oracle_agrees,
    })
}

/// `F^2(k)`: `F_k` for even `k`, 2 for `k = 3 (mod 6)`, 1 for `k = 1, 5 (mod 6)`.
pub fn fib_squares_gcd(k: u64) -> Result<BigInt> {
    let ki = validate_k(k)?;
    Ok(if k.is_multiple_of(2) {
        fib(ki)
    } else if k % 6 == 3 {
        BigInt::from(2)
    } else {
        BigInt::one()
    })
}

/// `L^2(k)`: `5 F_k` for even `k`, odd cases as in [`fib_squares_gcd`].
pub fn lucas_squares_gcd(k: u64) -> Result<BigInt> {
    let ki = validate_k(k)?;
    Ok(if k.is_multiple_of(2) {
        BigInt::from(5) * fib(ki)
    } else {
        fib_squares_gcd(k)?
    })
}

/// First-power GCD `gcd(G_{k+1} - G_1, G_{k+2} - G_2)`, also written `l_k`.
pub fn first_power_gcd_closed(spec: &GibonacciSpec, k: u64) -> Result<BigInt> {
    spec.ensure_not_degenerate()?;
    let k = validate_k(k)?;
    let diff = |i: i64| spec.term(k + i) - spec.term(i);
    Ok(diff(1).gcd(&diff(2)))
}

/// Outcome of the odd-`k` maximality test: when `2 mu` divides
/// `l_k = gcd(G_{k+1} - G_1, G_{k+2} - G_2)`, the squares GCD attains its
/// maximal value `|2 mu|` at `k l` for every odd `l >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddKReport {
    pub k: u64,
    pub ell_k: BigInt,
    pub two_mu: BigInt,
    pub hypothesis_holds: bool,
    pub predicted_value: Option<BigInt>,
}

/// Run the maximality test for a primitive spec and odd `k`.
pub fn odd_k_maximality(spec: &GibonacciSpec, k: u64) -> Result<OddKReport> {
    validate_k(k)?;
    if k.is_multiple_of(2) {
        return Err(Error::EvenK(k));
    }
    spec.ensure_primitive()?;
    let ell_k = first_power_gcd_closed(spec, k)?;
    let two_mu = BigInt::from(2) * spec.characteristic();
    let hypothesis_holds = ell_k.is_multiple_of(&two_mu);
    let predicted_value = hypothesis_holds.then(|| two_mu.abs());
    Ok(OddKReport {
        k,
        ell_k,
        two_mu,
        hypothesis_holds,
        predicted_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn fib_spec() -> GibonacciSpec {
        GibonacciSpec::fibonacci()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_gcd(&fib_spec(), 4, 2, 10).unwrap(), big(3));
        assert_eq!(
            oracle_gcd(&GibonacciSpec::new(3, 1), 5, 2, 20).unwrap(),
            big(11)
        );
        assert_eq!(oracle_gcd(&fib_spec(), 1, 2, 5).unwrap(), big(1));
    }

    #[test]
    fn oracle_rejects_bad_inputs() {
        assert_eq!(
            oracle_gcd(&GibonacciSpec::new(0, 0), 3, 2, 10),
            Err(Error::DegenerateSpec)
        );
        assert_eq!(
            oracle_gcd(&fib_spec(), 0, 2, 10),
            Err(Error::ZeroWindowLength)
        );
        assert_eq!(
            oracle_gcd(&fib_spec(), 3, 2, 2),
            Err(Error::TooFewWindows(2))
        );
        assert_eq!(oracle_gcd(&fib_spec(), 3, 0, 10), Err(Error::ZeroPower));
    }

    #[test]
    fn closed_form_examples() {
        let spec = GibonacciSpec::new(3, 1);
        assert_eq!(squares_gcd_closed(&spec, 15).unwrap(), big(22));
        assert_eq!(squares_gcd_closed(&spec, 7).unwrap(), big(1));
        assert_eq!(
            squares_gcd_closed(&GibonacciSpec::new(2, 7), 15).unwrap(),
            big(62)
        );
    }

    #[test]
    fn parity_form_examples() {
        assert_eq!(squares_gcd_parity(&fib_spec(), 2).unwrap(), big(1));
        assert_eq!(
            squares_gcd_parity(&GibonacciSpec::lucas(), 3).unwrap(),
            big(2)
        );
        assert_eq!(
            squares_gcd_parity(&GibonacciSpec::new(-1, 3), 15).unwrap(),
            big(22)
        );
    }

    #[test]
    fn classification_examples() {
        let c = classify_squares_gcd(&fib_spec(), 8, true).unwrap();
        assert_eq!(c.value, big(21));
        assert_eq!(c.case_tag, CaseTag::EvenFiveNotDividesMu);
        assert_eq!(c.scale_factor, big(1));
        assert_eq!(c.oracle_agrees, Some(true));

        let c = classify_squares_gcd(&GibonacciSpec::lucas(), 4, true).unwrap();
        assert_eq!(c.value, big(15));
        assert_eq!(c.case_tag, CaseTag::EvenFiveDividesMu);
        assert_eq!(c.oracle_agrees, Some(true));

        let c = classify_squares_gcd(&GibonacciSpec::new(0, 2), 4, true).unwrap();
        assert_eq!(c.value, big(12));
        assert_eq!(c.scale_factor, big(4));
        assert_eq!(c.oracle_agrees, Some(true));

        let c = classify_squares_gcd(&GibonacciSpec::new(3, 1), 5, false).unwrap();
        assert_eq!(c.value, big(11));
        assert_eq!(c.case_tag, CaseTag::OddGeneral);
        assert_eq!(c.oracle_agrees, None);
    }

    #[test]
    fn fib_lucas_closed_examples() {
        assert_eq!(fib_squares_gcd(9).unwrap(), big(2));
        assert_eq!(fib_squares_gcd(7).unwrap(), big(1));
        assert_eq!(fib_squares_gcd(4).unwrap(), big(3));
        assert_eq!(lucas_squares_gcd(6).unwrap(), big(40));
        assert_eq!(lucas_squares_gcd(3).unwrap(), big(2));
        assert_eq!(fib_squares_gcd(0), Err(Error::ZeroWindowLength));
        assert_eq!(lucas_squares_gcd(0), Err(Error::ZeroWindowLength));
    }

    #[test]
    fn first_power_examples() {
        assert_eq!(first_power_gcd_closed(&fib_spec(), 12).unwrap(), big(8));
        assert_eq!(first_power_gcd_closed(&fib_spec(), 6).unwrap(), big(4));
        assert_eq!(
            first_power_gcd_closed(&GibonacciSpec::new(2, 7), 15).unwrap(),
            big(62)
        );
    }

    #[test]
    fn maximality_examples() {
        let report = odd_k_maximality(&GibonacciSpec::new(2, 7), 15).unwrap();
        assert_eq!(report.ell_k, big(62));
        assert_eq!(report.two_mu, big(62));
        assert!(report.hypothesis_holds);
        assert_eq!(report.predicted_value, Some(big(62)));

        let report = odd_k_maximality(&GibonacciSpec::new(3, 1), 7).unwrap();
        assert!(!report.hypothesis_holds);
        assert_eq!(report.predicted_value, None);

        let report = odd_k_maximality(&fib_spec(), 1).unwrap();
        assert_eq!(report.ell_k, big(1));
        assert_eq!(report.two_mu, big(2));
        assert!(!report.hypothesis_holds);
    }

    #[test]
    fn maximality_rejects_bad_inputs() {
        assert_eq!(odd_k_maximality(&fib_spec(), 4), Err(Error::EvenK(4)));
        assert!(matches!(
            odd_k_maximality(&GibonacciSpec::new(2, 4), 3),
            Err(Error::NonPrimitiveSpec { .. })
        ));
    }

    #[test]
    fn oracle_report_stability() {
        let report = oracle_gcd_report(&fib_spec(), 6, 3, 40).unwrap();
        assert_eq!(report.value, big(2));
        assert!(report.stable);
        assert_eq!(report.windows, 40);
    }

    #[test]
    fn three_routes_agree_on_a_sample() {
        for spec in [
            fib_spec(),
            GibonacciSpec::lucas(),
            GibonacciSpec::new(-1, 3),
            GibonacciSpec::new(2, 7),
            GibonacciSpec::new(-4, 7),
        ] {
            for k in 1..=24 {
                let closed = squares_gcd_closed(&spec, k).unwrap();
                assert_eq!(squares_gcd_parity(&spec, k).unwrap(), closed);
                assert_eq!(oracle_gcd(&spec, k, 2, 10).unwrap(), closed);
                assert_eq!(
                    classify_squares_gcd(&spec, k, false).unwrap().value,
                    closed,
                    "classifier mismatch for {spec} at k = {k}"
                );
            }
        }
    }
}
