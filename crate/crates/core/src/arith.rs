//! Small exact-integer helpers shared by the search and sieve code.

use num_integer::Roots;

/// Floor square root of a nonnegative integer; `None` for negative input.
#[inline]
pub fn isqrt(m: i64) -> Option<i64> {
    (m >= 0).then(|| m.sqrt())
}

/// The nonnegative `k` with `k * k == m`, if any.
#[inline]
pub fn exact_sqrt(m: i64) -> Option<i64> {
    let r = isqrt(m)?;
    (r * r == m).then_some(r)
}

#[inline]
pub fn is_square(m: i64) -> bool {
    exact_sqrt(m).is_some()
}

/// Least nonnegative residue of `v` modulo `m`.
#[inline]
pub fn modp(v: i64, m: u64) -> i64 {
    v.rem_euclid(m as i64)
}

/// Largest `e` with `p^e | v`, for `v != 0`.
pub fn valuation(mut v: i64, p: i64) -> u32 {
    debug_assert!(v != 0 && p > 1);
    let mut e = 0;
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    e
}
