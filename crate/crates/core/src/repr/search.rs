//! Exhaustive representation search.
//!
//! Every search runs over the constrained triple space in a fixed order:
//! the third coordinate is outermost, then the second, and the first is
//! solved for exactly. Within a coordinate, class members are visited by
//! absolute value with the positive member first (`0, 1, -1, 2, -2, ...`
//! restricted to the class). Bounds are `|w_i| <= isqrt(m / c_i)`, so an
//! empty result is definitive.

use std::ops::ControlFlow;

use crate::arith::{exact_sqrt, isqrt};
use crate::model::{
    lift, reduce, CongruenceClass, ConstrainedForm, DiagonalForm, PolySum, Witness,
};

/// Members of a congruence class with `|w| <= max_abs`, in scan order.
#[derive(Debug, Clone)]
pub struct ClassMembers {
    pos: i64,
    neg: i64,
    step: i64,
    max_abs: i64,
}

impl ClassMembers {
    pub fn new(class: CongruenceClass, max_abs: i64) -> Self {
        let m = class.modulus() as i64;
        let r = class.residue();
        // -k = r (mod m)  <=>  k = m - r (mod m); k = 0 is already covered by `pos`.
        let neg = if r == 0 { m } else { m - r };
        ClassMembers {
            pos: r,
            neg,
            step: m,
            max_abs,
        }
    }
}

impl Iterator for ClassMembers {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        let pos_ok = self.pos <= self.max_abs;
        let neg_ok = self.neg <= self.max_abs;
        match (pos_ok, neg_ok) {
            (false, false) => None,
            (true, false) => {
                self.pos += self.step;
                Some(self.pos - self.step)
            }
            (false, true) => {
                self.neg += self.step;
                Some(-(self.neg - self.step))
            }
            (true, true) => {
                if self.pos <= self.neg {
                    self.pos += self.step;
                    Some(self.pos - self.step)
                } else {
                    self.neg += self.step;
                    Some(-(self.neg - self.step))
                }
            }
        }
    }
}

/// Visit every solution of `cf = m` in scan order until `visit` breaks.
pub fn scan_constrained<B>(
    cf: &ConstrainedForm,
    m: i64,
    mut visit: impl FnMut([i64; 3]) -> ControlFlow<B>,
) -> Option<B> {
    if m < 0 {
        return None;
    }
    let [c1, c2, c3] = cf.form.coeffs().map(|c| c as i64);
    let [k1, k2, k3] = cf.classes;
    for w3 in ClassMembers::new(k3, isqrt(m / c3)?) {
        let rem = m - c3 * w3 * w3;
        for w2 in ClassMembers::new(k2, isqrt(rem / c2)?) {
            let rem2 = rem - c2 * w2 * w2;
            if rem2 % c1 != 0 {
                continue;
            }
            let Some(k) = exact_sqrt(rem2 / c1) else {
                continue;
            };
            for w1 in [k, -k] {
                if k1.contains(w1) {
                    if let ControlFlow::Break(b) = visit([w1, w2, w3]) {
                        return Some(b);
                    }
                }
                if k == 0 {
                    break;
                }
            }
        }
    }
    None
}

/// First `(w1, w2)` with `c1 w1^2 + c2 w2^2 = m` satisfying `accept`, with
/// `w2` outer and both coordinates in scan order.
pub fn find_binary(
    coeffs: [u64; 2],
    m: i64,
    mut accept: impl FnMut(i64, i64) -> bool,
) -> Option<(i64, i64)> {
    if m < 0 {
        return None;
    }
    let [c1, c2] = coeffs.map(|c| c as i64);
    for w2 in ClassMembers::new(CongruenceClass::ANY, isqrt(m / c2)?) {
        let rem = m - c2 * w2 * w2;
        if rem % c1 != 0 {
            continue;
        }
        let Some(k) = exact_sqrt(rem / c1) else {
            continue;
        };
        for w1 in [k, -k] {
            if accept(w1, w2) {
                return Some((w1, w2));
            }
            if k == 0 {
                break;
            }
        }
    }
    None
}

/// First solution of `cf = m` in scan order satisfying `accept`.
pub fn find_constrained(
    cf: &ConstrainedForm,
    m: i64,
    mut accept: impl FnMut([i64; 3]) -> bool,
) -> Option<[i64; 3]> {
    scan_constrained(cf, m, |w| {
        if accept(w) {
            ControlFlow::Break(w)
        } else {
            ControlFlow::Continue(())
        }
    })
}

pub fn represent_constrained(cf: &ConstrainedForm, m: i64) -> Option<[i64; 3]> {
    find_constrained(cf, m, |_| true)
}

pub fn represent_diag(f: &DiagonalForm, m: u64) -> Option<[i64; 3]> {
    represent_constrained(&f.unconstrained(), to_i64(m))
}

/// First solution of `f = m` in scan order satisfying `accept`.
pub fn find_diag(
    f: &DiagonalForm,
    m: u64,
    accept: impl FnMut([i64; 3]) -> bool,
) -> Option<[i64; 3]> {
    find_constrained(&f.unconstrained(), to_i64(m), accept)
}

pub fn represent(p: &PolySum, n: u64) -> Option<Witness> {
    let rd = reduce(p);
    represent_constrained(&rd.constrained, rd.target(n))
        .map(|w| lift(&rd, w).expect("scan only yields class members"))
}

/// Every witness of `p = n`, in scan order.
pub fn all_representations(p: &PolySum, n: u64) -> Vec<Witness> {
    let rd = reduce(p);
    let mut out = Vec::new();
    scan_constrained::<()>(&rd.constrained, rd.target(n), |w| {
        out.push(lift(&rd, w).expect("scan only yields class members"));
        ControlFlow::Continue(())
    });
    out
}

pub fn all_representations_diag(f: &DiagonalForm, m: u64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    scan_constrained::<()>(&f.unconstrained(), to_i64(m), |w| {
        out.push(w);
        ControlFlow::Continue(())
    });
    out
}

/// Number of integer triples (order and signs distinct) with `f(w) = m`.
pub fn count_representations(f: &DiagonalForm, m: u64) -> u64 {
    let mut count = 0;
    scan_constrained::<()>(&f.unconstrained(), to_i64(m), |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

fn to_i64(m: u64) -> i64 {
    i64::try_from(m).expect("search target exceeds i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(c: [u64; 3]) -> DiagonalForm {
        DiagonalForm::new(c).unwrap()
    }

    #[test]
    fn member_order() {
        let all: Vec<_> = ClassMembers::new(CongruenceClass::ANY, 3).collect();
        assert_eq!(all, [0, 1, -1, 2, -2, 3, -3]);
        let odd: Vec<_> = ClassMembers::new(CongruenceClass::new(4, 1).unwrap(), 9).collect();
        assert_eq!(odd, [1, -3, 5, -7, 9]);
        let zero: Vec<_> = ClassMembers::new(CongruenceClass::new(6, 0).unwrap(), 12).collect();
        assert_eq!(zero, [0, 6, -6, 12, -12]);
        let three: Vec<_> = ClassMembers::new(CongruenceClass::new(6, 3).unwrap(), 9).collect();
        assert_eq!(three, [3, -3, 9, -9]);
    }

    #[test]
    fn represent_examples() {
        let tri = PolySum::unit_linear(2, 2, 2).unwrap();
        assert_eq!(represent(&tri, 0), Some(Witness::new(0, 0, 0)));
        let p236 = PolySum::unit_linear(2, 3, 6).unwrap();
        assert_eq!(represent(&p236, 48), None);
        let p123 = PolySum::unit_linear(1, 2, 3).unwrap();
        assert_eq!(represent(&p123, 1), Some(Witness::new(0, -1, 0)));
    }

    #[test]
    fn represent_diag_examples() {
        assert_eq!(represent_diag(&diag([1, 1, 1]), 7), None);
        assert_eq!(represent_diag(&diag([1, 1, 3]), 6), None);
        assert_eq!(represent_diag(&diag([21, 14, 6]), 41), Some([1, 1, 1]));
    }

    #[test]
    fn represent_constrained_examples() {
        let rd = reduce(&PolySum::unit_linear(1, 2, 3).unwrap());
        let hit = represent_constrained(&rd.constrained, 11).unwrap();
        assert_eq!(hit, [1, 1, 1]);
        let rd = reduce(&PolySum::shared_leading(3, 0, 1, 2).unwrap());
        assert_eq!(represent_constrained(&rd.constrained, 5), Some([0, 1, 2]));
        let rd = reduce(&PolySum::unit_linear(1, 2, 3).unwrap());
        assert_eq!(represent_constrained(&rd.constrained, 10), None);
    }

    #[test]
    fn counts() {
        let f = diag([1, 1, 1]);
        assert_eq!(count_representations(&f, 0), 1);
        assert_eq!(count_representations(&f, 1), 6);
        assert_eq!(count_representations(&f, 2), 12);
        assert_eq!(count_representations(&f, 7), 0);
        // r3(25) = 30
        assert_eq!(count_representations(&f, 25), 30);
    }

    #[test]
    fn count_matches_box_enumeration() {
        let f = diag([2, 3, 5]);
        for m in 0..300u64 {
            let mut brute = 0;
            for x in -13i64..=13 {
                for y in -10i64..=10 {
                    for z in -8i64..=8 {
                        if f.value([x, y, z]) == m as i128 {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(count_representations(&f, m), brute, "m={m}");
        }
    }

    #[test]
    fn all_representations_verify() {
        let p = PolySum::unit_linear(1, 2, 3).unwrap();
        let ws = all_representations(&p, 20);
        assert!(!ws.is_empty());
        for w in &ws {
            assert_eq!(p.evaluate(*w), 20);
        }
        assert_eq!(ws[0], represent(&p, 20).unwrap());
    }
}
