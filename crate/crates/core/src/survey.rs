//! Finite searches over coefficient tuples and conjecture scans.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::model::{DiagonalForm, PolySum};
use crate::repr::{coverage, represent, SieveOptions};

/// Counterexamples that eliminate all but the candidate triples for
/// `x(ax+1)+y(by+1)+z(cz+1)`.
pub const THM11_TEST_SET: [u64; 6] = [1, 2, 4, 5, 9, 48];

/// Default upper bound on `c`; the eliminations only need `c <= 10`.
pub const THM11_C_MAX: u64 = 50;

pub const THM13_N_LIMIT: u64 = 1000;

pub const CONJECTURE_TRIPLES: [(u64, u64, u64); 6] = [
    (2, 2, 6),
    (2, 3, 5),
    (2, 3, 7),
    (2, 3, 8),
    (2, 3, 9),
    (2, 3, 10),
];

/// Bounds for a survey run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyConfig {
    pub c_max: u64,
    pub test_set: Vec<u64>,
    pub a_range: RangeInclusive<u64>,
    pub n_limit: u64,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            c_max: THM11_C_MAX,
            test_set: THM11_TEST_SET.to_vec(),
            a_range: 3..=13,
            n_limit: THM13_N_LIMIT,
        }
    }
}

/// All `1 <= a <= b <= c <= c_max` such that every `n` in `test_set` is
/// represented by `x(ax+1)+y(by+1)+z(cz+1)`.
pub fn thm11_filter(c_max: u64, test_set: &[u64]) -> Vec<(u64, u64, u64)> {
    let mut tests = test_set.to_vec();
    tests.sort_unstable();
    tests.dedup();
    let mut out = Vec::new();
    for a in 1..=c_max {
        for b in a..=c_max {
            for c in b..=c_max {
                let p = PolySum::unit_linear(a, b, c).expect("positive");
                if tests.iter().all(|&n| represent(&p, n).is_some()) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Every `(a, b, c, d)` with `a` in range and `0 <= b <= c <= d <= a` whose
/// sum `x(ax+b)+y(ay+c)+z(az+d)` represents all `n <= n_limit`.
pub fn thm13_filter(a_range: RangeInclusive<u64>, n_limit: u64) -> Result<Vec<Quadruple>> {
    Ok(thm13_scan(a_range, n_limit, &SieveOptions::default())?
        .into_iter()
        .filter(|(_, first)| first.is_none())
        .map(|(q, _)| q)
        .collect())
}

pub type Quadruple = (u64, u64, u64, u64);

/// Every candidate with its smallest unrepresented `n <= n_limit`, if any.
pub fn thm13_scan(
    a_range: RangeInclusive<u64>,
    n_limit: u64,
    opts: &SieveOptions,
) -> Result<Vec<(Quadruple, Option<u64>)>> {
    let mut out = Vec::new();
    for a in a_range {
        if a == 0 {
            continue;
        }
        for b in 0..=a {
            for c in b..=a {
                for d in c..=a {
                    let p = PolySum::shared_leading(a, b, c, d)?;
                    let first = first_exception(&p, n_limit, opts)?;
                    out.push(((a, b, c, d), first));
                }
            }
        }
    }
    Ok(out)
}

/// The sieve finds the candidate; the exhaustive search confirms it.
fn first_exception(p: &PolySum, limit: u64, opts: &SieveOptions) -> Result<Option<u64>> {
    let cov = coverage(*p, limit, opts)?;
    let first = (0..=limit).find(|&n| !cov.contains(n));
    if let Some(n) = first {
        if let Some(w) = represent(p, n) {
            return Err(Error::Construction {
                clause: "survey",
                n,
                step: format!("sieve missed {n} for {p}, but {w} represents it"),
            });
        }
    }
    Ok(first)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureRow {
    pub triple: (u64, u64, u64),
    pub limit: u64,
    pub exceptions: Vec<u64>,
}

/// Exceptional sets of the six open triples up to `limit`.
pub fn conjecture11_verify(limit: u64) -> Result<Vec<ConjectureRow>> {
    conjecture11_verify_with(limit, &SieveOptions::default())
}

pub fn conjecture11_verify_with(limit: u64, opts: &SieveOptions) -> Result<Vec<ConjectureRow>> {
    CONJECTURE_TRIPLES
        .iter()
        .map(|&(a, b, c)| {
            let p = PolySum::unit_linear(a, b, c)?;
            Ok(ConjectureRow {
                triple: (a, b, c),
                limit,
                exceptions: coverage(p, limit, opts)?.exceptions(),
            })
        })
        .collect()
}

/// For `r = 6` and `r = 14`, every `n <= limit` with `20n + r` not of the
/// form `5x^2 + 5y^2 + 4z^2`.
pub fn remark21_scan(limit: u64) -> Result<[(u64, Vec<u64>); 2]> {
    remark21_scan_with(limit, &SieveOptions::default())
}

pub fn remark21_scan_with(limit: u64, opts: &SieveOptions) -> Result<[(u64, Vec<u64>); 2]> {
    let f = DiagonalForm::new([5, 5, 4]).expect("positive");
    let cov = coverage(f, 20 * limit + 14, opts)?;
    let scan =
        |r: u64| -> Vec<u64> { (0..=limit).filter(|&n| !cov.contains(20 * n + r)).collect() };
    Ok([(6, scan(6)), (14, scan(14))])
}
