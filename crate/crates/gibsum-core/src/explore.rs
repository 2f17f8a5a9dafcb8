//! Report builders behind the exploration commands: the closed-form value
//! table, the cube-sum conjecture comparison, and the odd-`k` periodicity
//! search. Everything here is exact integer arithmetic; the cube and
//! periodicity reports are labeled heuristic because no closed form is
//! proven for them.

use num_bigint::BigInt;
use num_integer::Integer as _;

use crate::error::{Error, Result};
use crate::gcd::{
    classify_squares_gcd_with_windows, fib_squares_gcd, first_power_gcd_closed, lucas_squares_gcd,
    oracle_gcd, oracle_gcd_report, squares_gcd_parity, CaseTag,
};
use crate::sequences::{fib, lucas, GibonacciSpec};

/// One row of the closed-form table: `F^2(k)`, `L^2(k)`, and optionally
/// `G^2(k)` for a caller-supplied seed pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub k: u64,
    pub case_label: String,
    pub fib_value: BigInt,
    pub lucas_value: BigInt,
    pub gib_value: Option<BigInt>,
}

fn case_label(k: u64, case: Option<CaseTag>) -> String {
    match case {
        Some(CaseTag::EvenFiveDividesMu) => "even (5 divides mu)".to_owned(),
        Some(CaseTag::EvenFiveNotDividesMu) => "even (5 does not divide mu)".to_owned(),
        _ => match (k % 2, k % 6) {
            (0, _) => "even".to_owned(),
            (_, 3) => "odd (k = 3 mod 6)".to_owned(),
            _ => "odd (k = 1 or 5 mod 6)".to_owned(),
        },
    }
}

/// Build rows for `k_min..=k_max`, cross-checking every value against the
/// brute-force oracle before emission. An oracle mismatch is an error: for
/// squares the closed forms are exact theorems.
pub fn table_rows(
    k_min: u64,
    k_max: u64,
    spec: Option<&GibonacciSpec>,
    oracle_windows: u64,
) -> Result<Vec<TableRow>> {
    if k_min == 0 || k_min > k_max {
        return Err(Error::BadTableRange { k_min, k_max });
    }
    if let Some(spec) = spec {
        spec.ensure_not_degenerate()?;
    }
    let fib_spec = GibonacciSpec::fibonacci();
    let lucas_spec = GibonacciSpec::lucas();
    let mut rows = Vec::with_capacity((k_max - k_min + 1) as usize);
    for k in k_min..=k_max {
        let fib_value = fib_squares_gcd(k)?;
        cross_check(&fib_spec, k, &fib_value, oracle_windows)?;
        let lucas_value = lucas_squares_gcd(k)?;
        cross_check(&lucas_spec, k, &lucas_value, oracle_windows)?;
        let (gib_value, case) = match spec {
            Some(spec) => {
                let classified = classify_squares_gcd_with_windows(spec, k, None)?;
                cross_check(spec, k, &classified.value, oracle_windows)?;
                (Some(classified.value), Some(classified.case_tag))
            }
            None => (None, None),
        };
        rows.push(TableRow {
            k,
            case_label: case_label(k, case.filter(|_| k % 2 == 0)),
            fib_value,
            lucas_value,
            gib_value,
        });
    }
    Ok(rows)
}

fn cross_check(spec: &GibonacciSpec, k: u64, closed: &BigInt, windows: u64) -> Result<()> {
    let oracle = oracle_gcd(spec, k, 2, windows)?;
    if oracle == *closed {
        Ok(())
    } else {
        Err(Error::OracleMismatch {
            k,
            closed: closed.clone(),
            oracle,
            windows,
        })
    }
}

/// Which sequence a cube-sum conjecture row refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeSetting {
    Fibonacci,
    Lucas,
}

impl CubeSetting {
    pub fn name(self) -> &'static str {
        match self {
            CubeSetting::Fibonacci => "fibonacci",
            CubeSetting::Lucas => "lucas",
        }
    }
}

/// Multiplier applied to the two-term GCD in the conjectured closed form:
/// 1 when 6 divides `k`, one half otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjectureFactor {
    One,
    Half,
}

impl ConjectureFactor {
    pub fn label(self) -> &'static str {
        match self {
            ConjectureFactor::One => "1",
            ConjectureFactor::Half => "1/2",
        }
    }
}

/// One even-`k` comparison between the truncated cube-sum oracle and the
/// conjectured closed form. The conjecture is open: rows may disagree, and
/// with the half factor the conjectured value can even fail to be an integer
/// (then `conjectured_value` is `None` and the row counts as a disagreement).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub setting: CubeSetting,
    pub k: u64,
    pub oracle_value: BigInt,
    pub oracle_stable: bool,
    /// `gcd(F_{k+1}^3 - 1, F_{k+2}^3 - 1)` or `gcd(L_{k+1}^3 - 1, L_{k+2}^3 - 9)`.
    pub closed_gcd: BigInt,
    pub factor: ConjectureFactor,
    pub conjectured_value: Option<BigInt>,
    pub agrees: bool,
}

/// Compare oracle and conjectured values for every even `k <= k_max`.
pub fn conjecture_cubes(
    setting: CubeSetting,
    k_max: u64,
    oracle_windows: u64,
) -> Result<Vec<ConjectureReport>> {
    if k_max < 2 || !k_max.is_multiple_of(2) {
        return Err(Error::BadCubeRange(k_max));
    }
    let spec = match setting {
        CubeSetting::Fibonacci => GibonacciSpec::fibonacci(),
        CubeSetting::Lucas => GibonacciSpec::lucas(),
    };
    let mut rows = Vec::with_capacity((k_max / 2) as usize);
    for k in (2..=k_max).step_by(2) {
        let oracle = oracle_gcd_report(&spec, k, 3, oracle_windows)?;
        let ki = k as i64;
        let closed_gcd = match setting {
            CubeSetting::Fibonacci => {
                let cube = |i: i64| {
                    let f = fib(ki + i);
                    &f * &f * &f
                };
                (cube(1) - BigInt::from(1)).gcd(&(cube(2) - BigInt::from(1)))
            }
            CubeSetting::Lucas => {
                let cube = |i: i64| {
                    let l = lucas(ki + i);
                    &l * &l * &l
                };
                (cube(1) - BigInt::from(1)).gcd(&(cube(2) - BigInt::from(9)))
            }
        };
        let factor = if k % 6 == 0 {
            ConjectureFactor::One
        } else {
            ConjectureFactor::Half
        };
        let (conjectured_value, agrees) = match factor {
            ConjectureFactor::One => {
                let agrees = oracle.value == closed_gcd;
                (Some(closed_gcd.clone()), agrees)
            }
            ConjectureFactor::Half => {
                let agrees = BigInt::from(2) * &oracle.value == closed_gcd;
                let value = closed_gcd.is_even().then(|| &closed_gcd / 2);
                (value, agrees)
            }
        };
        rows.push(ConjectureReport {
            setting,
            k,
            oracle_value: oracle.value,
            oracle_stable: oracle.stable,
            closed_gcd,
            factor,
            conjectured_value,
            agrees,
        });
    }
    Ok(rows)
}

/// Power of the window sums a periodicity search runs over; closed forms are
/// only available for first powers and squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumPower {
    First,
    Squares,
}

impl SumPower {
    pub fn as_u32(self) -> u32 {
        match self {
            SumPower::First => 1,
            SumPower::Squares => 2,
        }
    }
}

/// Result of scanning the odd-`k` value sequence for an even period. The
/// search is a heuristic: a reported period is consistent with every value
/// computed up to `verified_through`, nothing more.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub spec: GibonacciSpec,
    pub power: SumPower,
    pub k_max: u64,
    /// Smallest even period consistent with all computed values, if any.
    pub candidate_period: Option<u64>,
    pub verified_through: u64,
    /// `(odd residue mod candidate_period, value)` pairs; empty when no
    /// candidate was found.
    pub residue_classes: Vec<(u64, BigInt)>,
}

/// Search even candidate periods `P <= k_max / 2` in increasing order over
/// the odd-`k` closed-form values. Only even strides can map odd `k` to odd
/// `k`, so odd candidates are not searched.
pub fn periodicity_search(
    spec: &GibonacciSpec,
    power: SumPower,
    k_max: u64,
) -> Result<PeriodicityReport> {
    spec.ensure_primitive()?;
    if k_max < 31 || k_max.is_multiple_of(2) {
        return Err(Error::BadPeriodicityRange(k_max));
    }

    let value = |k: u64| -> Result<BigInt> {
        match power {
            SumPower::First => first_power_gcd_closed(spec, k),
            SumPower::Squares => squares_gcd_parity(spec, k),
        }
    };
    let values: Vec<(u64, BigInt)> = (1..=k_max)
        .step_by(2)
        .map(|k| Ok((k, value(k)?)))
        .collect::<Result<_>>()?;

    let candidate_period = (2..=k_max / 2).step_by(2).find(|period| {
        values
            .iter()
            .filter(|(k, _)| k + period <= k_max)
            .all(|(k, v)| values[((k + period - 1) / 2) as usize].1 == *v)
    });

    let residue_classes = match candidate_period {
        Some(period) => values
            .iter()
            .take_while(|(k, _)| *k < period)
            .map(|(k, v)| (*k, v.clone()))
            .collect(),
        None => Vec::new(),
    };

    Ok(PeriodicityReport {
        spec: spec.clone(),
        power,
        k_max,
        candidate_period,
        verified_through: k_max,
        residue_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn table_rows_match_worked_examples() {
        let rows = table_rows(1, 10, None, 10).unwrap();
        let row3 = &rows[2];
        assert_eq!(row3.fib_value, big(2));
        assert_eq!(row3.lucas_value, big(2));
        assert_eq!(row3.case_label, "odd (k = 3 mod 6)");
        let row10 = &rows[9];
        assert_eq!(row10.fib_value, big(55));
        assert_eq!(row10.lucas_value, big(275));
        assert_eq!(row10.case_label, "even");

        let spec = GibonacciSpec::new(3, 1);
        let rows = table_rows(5, 5, Some(&spec), 10).unwrap();
        assert_eq!(rows[0].gib_value, Some(big(11)));
    }

    #[test]
    fn table_row_case_labels_follow_mu() {
        let spec = GibonacciSpec::lucas();
        let rows = table_rows(4, 4, Some(&spec), 10).unwrap();
        assert_eq!(rows[0].case_label, "even (5 divides mu)");
        let spec = GibonacciSpec::new(2, 7);
        let rows = table_rows(4, 4, Some(&spec), 10).unwrap();
        assert_eq!(rows[0].case_label, "even (5 does not divide mu)");
    }

    #[test]
    fn table_rejects_bad_ranges() {
        assert!(matches!(
            table_rows(0, 5, None, 10),
            Err(Error::BadTableRange { .. })
        ));
        assert!(matches!(
            table_rows(7, 5, None, 10),
            Err(Error::BadTableRange { .. })
        ));
    }

    #[test]
    fn fibonacci_cube_rows() {
        let rows = conjecture_cubes(CubeSetting::Fibonacci, 6, 40).unwrap();
        assert_eq!(rows.len(), 3);

        // k = 4: half factor, gcd(F_5^3 - 1, F_6^3 - 1) = gcd(124, 511) = 1,
        // which is odd, so the conjectured value is not even an integer.
        let row4 = &rows[1];
        assert_eq!(row4.factor, ConjectureFactor::Half);
        assert_eq!(row4.closed_gcd, big(1));
        assert_eq!(row4.conjectured_value, None);
        assert_eq!(row4.oracle_value, big(1));
        assert!(!row4.agrees);

        // k = 6: whole factor, conjectured gcd(2196, 9260) = 4, but the true
        // GCD of the window sums is 2 (every window sum is 2 mod 4).
        let row6 = &rows[2];
        assert_eq!(row6.factor, ConjectureFactor::One);
        assert_eq!(row6.conjectured_value, Some(big(4)));
        assert_eq!(row6.oracle_value, big(2));
        assert!(row6.oracle_stable);
        assert!(!row6.agrees);
    }

    #[test]
    fn lucas_cube_rows() {
        let rows = conjecture_cubes(CubeSetting::Lucas, 6, 40).unwrap();
        // k = 6: gcd(L_7^3 - 1, L_8^3 - 9) = gcd(24388, 103814) = 2 and the
        // oracle agrees.
        let row6 = &rows[2];
        assert_eq!(row6.closed_gcd, big(2));
        assert_eq!(row6.oracle_value, big(2));
        assert!(row6.agrees);
    }

    #[test]
    fn conjecture_rejects_odd_k_max() {
        assert_eq!(
            conjecture_cubes(CubeSetting::Fibonacci, 7, 10),
            Err(Error::BadCubeRange(7))
        );
        assert_eq!(
            conjecture_cubes(CubeSetting::Fibonacci, 0, 10),
            Err(Error::BadCubeRange(0))
        );
    }

    #[test]
    fn periodicity_finds_the_mod_30_structure() {
        let spec = GibonacciSpec::new(-1, 3);
        let report = periodicity_search(&spec, SumPower::Squares, 149).unwrap();
        assert_eq!(report.candidate_period, Some(30));
        assert_eq!(report.verified_through, 149);
        let classes: std::collections::BTreeMap<u64, BigInt> =
            report.residue_classes.into_iter().collect();
        assert_eq!(classes[&15], big(22));
        assert_eq!(classes[&5], big(11));
        assert_eq!(classes[&25], big(11));
        for r in [3u64, 9, 21, 27] {
            assert_eq!(classes[&r], big(2), "residue {r}");
        }
        for r in [1u64, 7, 11, 13, 17, 19, 23, 29] {
            assert_eq!(classes[&r], big(1), "residue {r}");
        }
    }

    #[test]
    fn periodicity_first_power_period_six() {
        let spec = GibonacciSpec::new(-1, 3);
        let report = periodicity_search(&spec, SumPower::First, 149).unwrap();
        assert_eq!(report.candidate_period, Some(6));
    }

    #[test]
    fn periodicity_fibonacci_squares_period_six() {
        let report =
            periodicity_search(&GibonacciSpec::fibonacci(), SumPower::Squares, 149).unwrap();
        assert_eq!(report.candidate_period, Some(6));
        let classes: std::collections::BTreeMap<u64, BigInt> =
            report.residue_classes.into_iter().collect();
        assert_eq!(classes[&3], big(2));
        assert_eq!(classes[&1], big(1));
        assert_eq!(classes[&5], big(1));
    }

    #[test]
    fn periodicity_rejects_non_primitive_and_bad_ranges() {
        assert!(matches!(
            periodicity_search(&GibonacciSpec::new(2, 4), SumPower::Squares, 149),
            Err(Error::NonPrimitiveSpec { .. })
        ));
        assert_eq!(
            periodicity_search(&GibonacciSpec::fibonacci(), SumPower::Squares, 30),
            Err(Error::BadPeriodicityRange(30))
        );
        assert_eq!(
            periodicity_search(&GibonacciSpec::fibonacci(), SumPower::Squares, 29),
            Err(Error::BadPeriodicityRange(29))
        );
    }
}
