//! Auxiliary representation lemmas used by the witness constructions.
//!
//! [`lemma21_descent`] and [`lemma22_construct`] are constructive: they carry
//! out the rotation-by-`3+4i` descent and the mod-5 realignment step by step.
//! The rest are realized by exhaustive search in the shared scan order. A
//! failed search is reported as an error.

use num_integer::Integer;

use crate::arith::{is_square, modp, valuation};
use crate::error::{Error, Result};
use crate::model::{DiagonalForm, SquareRep};
use crate::repr::{find_binary, find_diag};

/// One rotation `(u, v) -> (3u' + 4v', 4u' - 3v')` with `u' = δu`, `v' = εv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentStep {
    pub before: (i64, i64),
    pub signs: (i8, i8),
    pub after: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DescentTrace {
    /// 5-adic order of `gcd(u, v)`; also the number of steps.
    pub order: u32,
    pub steps: Vec<DescentStep>,
}

const SIGN_ORDER: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Rewrite `u^2 + v^2` (a positive multiple of 5) as `x^2 + y^2` with `5 ∤ xy`.
pub fn lemma21_descent(u: i64, v: i64) -> Result<((i64, i64), DescentTrace)> {
    let sum = u as i128 * u as i128 + v as i128 * v as i128;
    if sum == 0 || sum % 5 != 0 {
        return Err(Error::Precondition(format!(
            "u^2+v^2 = {sum} must be a positive multiple of 5"
        )));
    }
    let order = valuation(u.gcd(&v), 5);
    let scale = 5i64.pow(order);
    let mut pair = (u / scale, v / scale);
    let mut steps = Vec::with_capacity(order as usize);
    for _ in 0..order {
        let (u0, v0) = pair;
        let &(d, e) = SIGN_ORDER
            .iter()
            .find(|&&(d, e)| modp(d as i64 * u0 - 2 * e as i64 * v0, 5) != 0)
            .expect("u0, v0 are not both divisible by 5");
        let (u1, v1) = (d as i64 * u0, e as i64 * v0);
        let after = (3 * u1 + 4 * v1, 4 * u1 - 3 * v1);
        steps.push(DescentStep {
            before: pair,
            signs: (d, e),
            after,
        });
        pair = after;
    }
    debug_assert!(pair.0 % 5 != 0 && pair.1 % 5 != 0);
    Ok((pair, DescentTrace { order, steps }))
}

/// Intermediate data of [`lemma22_construct`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma22Trace {
    /// `20n + r = (2w)^2 + u^2 + v^2` with `u, v` odd.
    pub three_squares: SquareRep,
    /// `X^2 + Y^2 + z^2` after the mod-5 case analysis, with `X = 2Y (mod 5)`.
    pub aligned: SquareRep,
    pub result: [i64; 3],
}

/// `20n + r = 5x^2 + 5y^2 + z^2` with `z` odd, for `r ∈ {6, 14}`.
pub fn lemma22_construct(n: u64, r: u64) -> Result<[i64; 3]> {
    lemma22_trace(n, r).map(|t| t.result)
}

pub fn lemma22_trace(n: u64, r: u64) -> Result<Lemma22Trace> {
    if r != 6 && r != 14 {
        return Err(Error::Precondition(format!("r must be 6 or 14, got {r}")));
    }
    let m = 20 * n as i64 + r as i64;
    let fail = |step: &str| Error::Construction {
        clause: "5x^2+5y^2+z^2",
        n,
        step: step.to_string(),
    };
    let rr = r as i64 % 5;
    let sq5 = |v: i64| modp(v * v, 5);

    // (1) w descending, first u, v odd
    let max_w = crate::arith::isqrt(m / 4).unwrap_or(0);
    let (w, u, v) = (0..=max_w)
        .rev()
        .find_map(|w| {
            find_binary([1, 1], m - 4 * w * w, |a, b| a % 2 != 0 && b % 2 != 0)
                .map(|(a, b)| (w, a, b))
        })
        .ok_or_else(|| fail("no three-square representation with two odd parts"))?;
    let three_squares = SquareRep::new(vec![(1, 2 * w), (1, u), (1, v)]);

    // (2) case analysis on (2w)^2 mod 5, leaving X^2 + Y^2 + z^2 with z^2 = r
    let x_big = 2 * w;
    let (y_big, z) = if w % 5 == 0 {
        if sq5(u) == rr && sq5(v) == 0 {
            (v, u)
        } else if sq5(v) == rr && sq5(u) == 0 {
            (u, v)
        } else {
            return Err(fail("5 | w but neither u^2 nor v^2 is r mod 5"));
        }
    } else if sq5(x_big) == modp(-rr, 5) {
        if sq5(u) != rr || sq5(v) != rr {
            return Err(fail("(2w)^2 = -r but u^2, v^2 are not both r mod 5"));
        }
        (v, u)
    } else if sq5(x_big) == rr {
        let ((s, t), _) = lemma21_descent(u, v)?;
        if s % 2 == 0 || t % 2 == 0 {
            return Err(fail("descent produced an even part"));
        }
        if sq5(s) == rr {
            (t, s)
        } else if sq5(t) == rr {
            (s, t)
        } else {
            return Err(fail("neither descended part is r mod 5"));
        }
    } else {
        return Err(fail("(2w)^2 is neither r nor -r mod 5"));
    };

    // (4) X = ±2Y (mod 5); flip Y so that X = 2Y
    let y_big = if modp(x_big - 2 * y_big, 5) == 0 {
        y_big
    } else if modp(x_big + 2 * y_big, 5) == 0 {
        -y_big
    } else {
        return Err(fail("X is not ±2Y mod 5"));
    };
    let aligned = SquareRep::new(vec![(1, x_big), (1, y_big), (1, z)]);

    // (5)
    let x = (x_big - 2 * y_big) / 5;
    let y = (2 * x_big + y_big) / 5;
    let result = [x, y, z];
    if 5 * x * x + 5 * y * y + z * z != m || z % 2 == 0 {
        return Err(fail("final identity does not hold"));
    }
    Ok(Lemma22Trace {
        three_squares,
        aligned,
        result,
    })
}

/// `w = u^2 + 2v^2` with `u, v` odd, found by search.
///
/// Not every `w` of the form `x^2 + 2y^2` has such a representation (an
/// odd-odd one forces `w = 3 mod 8`); those inputs return
/// [`Error::NotFound`], see [`lemma23i_anomalies`].
pub fn lemma23i_odd(w: u64) -> Result<(i64, i64)> {
    lemma23i_odd_where(w, |_, _| true)
}

/// [`lemma23i_odd`] with an extra acceptance condition on `(u, v)`.
pub fn lemma23i_odd_where(w: u64, mut accept: impl FnMut(i64, i64) -> bool) -> Result<(i64, i64)> {
    let m = w as i64;
    if w == 0 || find_binary([1, 2], m, |_, _| true).is_none() {
        return Err(Error::NotRepresentable {
            value: w,
            form: "x^2+2y^2 (positive)",
        });
    }
    find_binary([1, 2], m, |u, v| u % 2 != 0 && v % 2 != 0 && accept(u, v)).ok_or_else(|| {
        Error::NotFound {
            value: w,
            what: "u^2+2v^2 with u, v odd".into(),
        }
    })
}

/// Every `w <= limit` that is `x^2 + 2y^2` but has no odd-odd representation.
pub fn lemma23i_anomalies(limit: u64) -> Vec<u64> {
    (1..=limit)
        .filter(|&w| matches!(lemma23i_odd(w), Err(Error::NotFound { .. })))
        .collect()
}

/// `(∃x,y: w = 3x^2 + 6y^2, 3 | w ∧ ∃u,v: w = u^2 + 2v^2)`.
pub fn lemma23ii_check(w: u64) -> (bool, bool) {
    let m = w as i64;
    let lhs = find_binary([3, 6], m, |_, _| true).is_some();
    let rhs = w.is_multiple_of(3) && find_binary([1, 2], m, |_, _| true).is_some();
    (lhs, rhs)
}

/// `6n + 1 = x^2 + 3y^2 + 6z^2` with `x = δ (mod 2)`; `6n + 1` must not be a square.
pub fn lemma23iii_rep(n: u64, delta: u8) -> Result<[i64; 3]> {
    if delta > 1 {
        return Err(Error::Precondition(format!(
            "δ must be 0 or 1, got {delta}"
        )));
    }
    let m = 6 * n + 1;
    if is_square(m as i64) {
        return Err(Error::Precondition(format!(
            "6n+1 = {m} is a perfect square"
        )));
    }
    let form = DiagonalForm::new([1, 3, 6]).expect("positive");
    find_diag(&form, m, |w| modp(w[0], 2) == delta as i64).ok_or_else(|| Error::NotFound {
        value: m,
        what: format!("x^2+3y^2+6z^2 with x = {delta} mod 2"),
    })
}

/// `6n + 1 = x^2 + y^2 + 2z^2` with `3 ∤ xyz`, for `n >= 1`.
pub fn lemma31_rep(n: u64) -> Result<[i64; 3]> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let m = 6 * n + 1;
    let form = DiagonalForm::new([1, 1, 2]).expect("positive");
    find_diag(&form, m, |w| w.iter().all(|v| v % 3 != 0)).ok_or_else(|| Error::NotFound {
        value: m,
        what: "x^2+y^2+2z^2 with 3 ∤ xyz".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All (x, y) with x^2 + y^2 = m, by plain enumeration.
    fn two_square_pairs(m: i64) -> Vec<(i64, i64)> {
        let b = (m as f64).sqrt() as i64 + 1;
        let mut out = vec![];
        for x in -b..=b {
            for y in -b..=b {
                if x * x + y * y == m {
                    out.push((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn descent_examples() {
        let ((x, y), tr) = lemma21_descent(1, 2).unwrap();
        assert_eq!((x, y), (1, 2));
        assert_eq!(tr.order, 0);

        let ((x, y), tr) = lemma21_descent(5, 5).unwrap();
        assert_eq!((x, y), (7, 1));
        assert_eq!(tr.order, 1);
        assert_eq!(tr.steps[0].signs, (1, 1));
        assert!(two_square_pairs(50).contains(&(7, 1)));

        let ((x, y), _) = lemma21_descent(0, 5).unwrap();
        let valid: Vec<_> = two_square_pairs(25)
            .into_iter()
            .filter(|(a, b)| a % 5 != 0 && b % 5 != 0)
            .collect();
        assert!(valid.contains(&(x, y)));
    }

    #[test]
    fn descent_preconditions() {
        assert!(lemma21_descent(0, 0).is_err());
        assert!(lemma21_descent(1, 1).is_err());
    }

    #[test]
    fn descent_steps_scale_by_25() {
        let (_, tr) = lemma21_descent(125, 250).unwrap();
        assert_eq!(tr.order, 3);
        for s in &tr.steps {
            let b = s.before.0 * s.before.0 + s.before.1 * s.before.1;
            let a = s.after.0 * s.after.0 + s.after.1 * s.after.1;
            assert_eq!(a, 25 * b);
        }
    }

    #[test]
    fn lemma22_examples() {
        for (n, r) in [(0u64, 6u64), (0, 14), (1, 6)] {
            let [x, y, z] = lemma22_construct(n, r).unwrap();
            assert_eq!(5 * x * x + 5 * y * y + z * z, 20 * n as i64 + r as i64);
            assert!(z % 2 != 0);
        }
        assert!(lemma22_construct(0, 7).is_err());
    }

    #[test]
    fn lemma22_small_range() {
        for r in [6, 14] {
            for n in 0..500 {
                let t = lemma22_trace(n, r).unwrap();
                assert_eq!(t.three_squares.total(), 20 * n as i128 + r as i128);
                assert_eq!(t.aligned.total(), t.three_squares.total());
            }
        }
    }

    #[test]
    fn lemma23i_examples() {
        assert_eq!(lemma23i_odd(3).unwrap(), (1, 1));
        assert_eq!(lemma23i_odd(11).unwrap(), (3, 1));
        // 9 = 3^2 = 1^2 + 2*2^2, but u, v odd forces 3 mod 8
        assert!(matches!(lemma23i_odd(9), Err(Error::NotFound { .. })));
        assert!(matches!(
            lemma23i_odd(5),
            Err(Error::NotRepresentable { .. })
        ));
        assert!(lemma23i_anomalies(20).contains(&9));
    }

    #[test]
    fn lemma23ii_examples() {
        assert_eq!(lemma23ii_check(3), (true, true));
        assert_eq!(lemma23ii_check(6), (true, true));
        assert_eq!(lemma23ii_check(12), (true, true));
        assert_eq!(lemma23ii_check(9), (true, true));
        assert_eq!(lemma23ii_check(15), (false, false));
        assert_eq!(lemma23ii_check(1), (false, false));
    }

    #[test]
    fn lemma23iii_examples() {
        assert_eq!(lemma23iii_rep(2, 1).unwrap(), [1, 2, 0]);
        assert_eq!(lemma23iii_rep(2, 0).unwrap(), [2, 1, 1]);
        assert!(matches!(lemma23iii_rep(0, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn lemma31_examples() {
        assert_eq!(lemma31_rep(1).unwrap(), [2, 1, 1]);
        assert_eq!(lemma31_rep(2).unwrap(), [2, 1, 2]);
        assert_eq!(lemma31_rep(4).unwrap(), [4, 1, 2]);
        assert!(lemma31_rep(0).is_err());
    }
}
