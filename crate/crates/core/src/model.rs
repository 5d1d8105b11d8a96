//! Polynomial sums `x(a1 x + b1) + y(a2 y + b2) + z(a3 z + b3)`, diagonal
//! forms, and the completing-the-square reduction that connects them.
//!
//! Each summand satisfies `4a * x(ax+b) + b^2 = (2ax+b)^2`. With `L` the lcm of
//! the quadratic coefficients, `n = f(x,y,z)` holds exactly when
//!
//! ```text
//! 4L n + C = sum_i (L/a_i) (2 a_i x_i + b_i)^2,     C = sum_i (L/a_i) b_i^2
//! ```
//!
//! so every representation problem for a [`PolySum`] becomes one for the
//! diagonal form `(L/a_1, L/a_2, L/a_3)` with `w_i = b_i (mod 2 a_i)`.
//!
//! Integer widths: evaluation is done in `i128`. Search targets `4Ln + C` are
//! `i64`, which is exact for `n <= 2^40` whenever `L <= 2^20`; larger inputs
//! panic in [`ReductionData::target`] rather than wrap.

use std::fmt;

use num_integer::Integer;

use crate::arith::modp;
use crate::error::{Error, Result};

/// One summand `x(ax+b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    a: u64,
    b: u64,
}

impl Term {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidTerm { a });
        }
        Ok(Term { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    #[inline]
    pub fn value(&self, x: i64) -> i128 {
        let x = x as i128;
        x * (self.a as i128 * x + self.b as i128)
    }

    /// Smallest value over all integers; attained next to the vertex `-b/2a`.
    pub fn min_value(&self) -> i128 {
        let v = (-(self.b as i64)).div_euclid(2 * self.a as i64);
        self.value(v).min(self.value(v + 1))
    }
}

/// A sum of exactly three [`Term`]s in variables `x, y, z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolySum {
    terms: [Term; 3],
}

impl PolySum {
    pub fn new(terms: [Term; 3]) -> Self {
        PolySum { terms }
    }

    pub fn from_pairs(pairs: [(u64, u64); 3]) -> Result<Self> {
        Ok(PolySum {
            terms: [
                Term::new(pairs[0].0, pairs[0].1)?,
                Term::new(pairs[1].0, pairs[1].1)?,
                Term::new(pairs[2].0, pairs[2].1)?,
            ],
        })
    }

    /// `x(ax+1) + y(by+1) + z(cz+1)`.
    pub fn unit_linear(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::from_pairs([(a, 1), (b, 1), (c, 1)])
    }

    /// `x(ax+b) + y(ay+c) + z(az+d)`.
    pub fn shared_leading(a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        Self::from_pairs([(a, b), (a, c), (a, d)])
    }

    pub fn terms(&self) -> &[Term; 3] {
        &self.terms
    }

    pub fn evaluate(&self, w: Witness) -> i128 {
        evaluate(self, w)
    }

    pub fn reduce(&self) -> ReductionData {
        reduce(self)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: u64, var: char) -> fmt::Result {
    if c == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{c}{var}")
    }
}

const VARS: [char; 3] = ['x', 'y', 'z'];

impl fmt::Display for PolySum {
    /// Canonical rendering: `b = 0` terms print as `a v^2` unless every term
    /// has `b = 0`, in which case `v(av)` keeps the output distinguishable
    /// from a [`DiagonalForm`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all_pure = self.terms.iter().all(|t| t.b == 0);
        for (i, (t, v)) in self.terms.iter().zip(VARS).enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.b == 0 && !all_pure {
                write_coeff(f, t.a, v)?;
                f.write_str("^2")?;
            } else {
                write!(f, "{v}(")?;
                write_coeff(f, t.a, v)?;
                if t.b != 0 {
                    write!(f, "+{}", t.b)?;
                }
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

/// `α x^2 + β y^2 + γ z^2` with positive coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    coeffs: [u64; 3],
}

impl DiagonalForm {
    pub fn new(coeffs: [u64; 3]) -> Result<Self> {
        if coeffs.contains(&0) {
            return Err(Error::InvalidDiagonal { coeffs });
        }
        Ok(DiagonalForm { coeffs })
    }

    pub fn coeffs(&self) -> [u64; 3] {
        self.coeffs
    }

    pub fn value(&self, w: [i64; 3]) -> i128 {
        self.coeffs
            .iter()
            .zip(w)
            .map(|(&c, v)| c as i128 * v as i128 * v as i128)
            .sum()
    }

    pub fn unconstrained(self) -> ConstrainedForm {
        ConstrainedForm {
            form: self,
            classes: [CongruenceClass::ANY; 3],
        }
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (&c, v)) in self.coeffs.iter().zip(VARS).enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write_coeff(f, c, v)?;
            f.write_str("^2")?;
        }
        Ok(())
    }
}

/// Residue class `r mod m` with `0 <= r < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CongruenceClass {
    modulus: u64,
    residue: i64,
}

impl CongruenceClass {
    /// All integers.
    pub const ANY: CongruenceClass = CongruenceClass {
        modulus: 1,
        residue: 0,
    };

    pub fn new(modulus: u64, residue: i64) -> Result<Self> {
        if modulus == 0 || residue < 0 || residue as u64 >= modulus {
            return Err(Error::InvalidClass { modulus, residue });
        }
        Ok(CongruenceClass { modulus, residue })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> i64 {
        self.residue
    }

    #[inline]
    pub fn contains(&self, v: i64) -> bool {
        modp(v, self.modulus) == self.residue
    }
}

impl fmt::Display for CongruenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// A diagonal form with one congruence class per variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConstrainedForm {
    pub form: DiagonalForm,
    pub classes: [CongruenceClass; 3],
}

impl ConstrainedForm {
    pub fn new(form: DiagonalForm, classes: [CongruenceClass; 3]) -> Self {
        ConstrainedForm { form, classes }
    }

    pub fn admits(&self, w: [i64; 3]) -> bool {
        self.classes.iter().zip(w).all(|(c, v)| c.contains(v))
    }
}

impl fmt::Display for ConstrainedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with ", self.form)?;
        for (i, (c, v)) in self.classes.iter().zip(VARS).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} = {c}")?;
        }
        Ok(())
    }
}

/// Output of [`reduce`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionData {
    /// lcm of the quadratic coefficients.
    pub lcm: u64,
    /// `sum (L/a_i) b_i^2`.
    pub constant: u64,
    pub constrained: ConstrainedForm,
    pub source: PolySum,
}

impl ReductionData {
    /// `4L`, the coefficient of `n` on the diagonal side.
    pub fn multiplier(&self) -> u64 {
        4 * self.lcm
    }

    /// `4Ln + C`.
    pub fn target(&self, n: u64) -> i64 {
        let t = self.multiplier() as i128 * n as i128 + self.constant as i128;
        i64::try_from(t).expect("reduction target exceeds i64; see module docs for the bound")
    }

    /// `w_i = 2 a_i x_i + b_i`.
    pub fn forward(&self, w: Witness) -> [i64; 3] {
        let t = self.source.terms();
        let c = w.coords();
        std::array::from_fn(|i| 2 * t[i].a as i64 * c[i] + t[i].b as i64)
    }

    pub fn lift(&self, triple: [i64; 3]) -> Result<Witness> {
        lift(self, triple)
    }
}

/// Integer triple certifying one representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Witness {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Witness {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Witness { x, y, z }
    }

    pub fn coords(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[i64; 3]> for Witness {
    fn from(c: [i64; 3]) -> Self {
        Witness::new(c[0], c[1], c[2])
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// `total = sum coeff * value^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareRep {
    parts: Vec<(u64, i64)>,
    total: i128,
}

impl SquareRep {
    pub fn new(parts: Vec<(u64, i64)>) -> Self {
        let total = parts
            .iter()
            .map(|&(c, v)| c as i128 * v as i128 * v as i128)
            .sum();
        SquareRep { parts, total }
    }

    pub fn parts(&self) -> &[(u64, i64)] {
        &self.parts
    }

    pub fn total(&self) -> i128 {
        self.total
    }

    pub fn values(&self) -> Vec<i64> {
        self.parts.iter().map(|p| p.1).collect()
    }
}

impl fmt::Display for SquareRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.total)?;
        for (i, (c, v)) in self.parts.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            if *c == 1 {
                write!(f, "{sep}({v})^2")?;
            } else {
                write!(f, "{sep}{c}({v})^2")?;
            }
        }
        Ok(())
    }
}

pub fn evaluate(p: &PolySum, w: Witness) -> i128 {
    p.terms
        .iter()
        .zip(w.coords())
        .map(|(t, x)| t.value(x))
        .sum()
}

pub fn reduce(p: &PolySum) -> ReductionData {
    let lcm = p.terms.iter().fold(1u64, |l, t| l.lcm(&t.a));
    let coeffs = p.terms.map(|t| lcm / t.a);
    let constant = p.terms.iter().zip(coeffs).map(|(t, c)| c * t.b * t.b).sum();
    let classes = p.terms.map(|t| {
        let m = 2 * t.a;
        CongruenceClass::new(m, (t.b % m) as i64).expect("residue reduced mod 2a")
    });
    ReductionData {
        lcm,
        constant,
        constrained: ConstrainedForm::new(
            DiagonalForm::new(coeffs).expect("L/a_i is positive"),
            classes,
        ),
        source: *p,
    }
}

pub fn lift(rd: &ReductionData, triple: [i64; 3]) -> Result<Witness> {
    let mut out = [0i64; 3];
    for (i, (t, &w)) in rd.source.terms.iter().zip(&triple).enumerate() {
        let class = rd.constrained.classes[i];
        if !class.contains(w) {
            return Err(Error::CongruenceViolation {
                index: i,
                value: w,
                modulus: class.modulus,
                residue: class.residue,
            });
        }
        out[i] = (w - t.b as i64) / (2 * t.a as i64);
    }
    Ok(out.into())
}

pub fn verify(p: &PolySum, n: u64, w: Witness) -> bool {
    evaluate(p, w) == n as i128
}

/// Returns `w` or `-w`, whichever is `r (mod m)`, preferring `w`.
pub fn normalize_sign(w: i64, m: u64, r: i64) -> Result<i64> {
    let r = modp(r, m);
    if modp(w, m) == r {
        Ok(w)
    } else if modp(-w, m) == r {
        Ok(-w)
    } else {
        Err(Error::NoValidSign {
            value: w,
            modulus: m,
            residue: r,
        })
    }
}
