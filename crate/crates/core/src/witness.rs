//! Constructive witnesses for the universal sums.
//!
//! Each [`Clause`] realizes one displayed identity
//! `M n + C = c1 w1^2 + c2 w2^2 + c3 w3^2` with every `w_i` in a fixed residue
//! class. A construction finds an intermediate square representation,
//! rotates and rescales it as the argument requires, then only flips signs
//! and reorders coordinates to land in the residue classes before lifting
//! back to `(x, y, z)`.
//!
//! Existence of the intermediate representations (three squares,
//! Dickson forms, the auxiliary lemmas) is taken from exhaustive search.

use std::fmt;

use crate::arith::{exact_sqrt, is_square, isqrt, modp};
use crate::error::{Error, Result};
use crate::lemmas::{lemma22_construct, lemma23i_odd_where, lemma23iii_rep, lemma31_rep};
use crate::model::{
    lift, normalize_sign, reduce, verify, CongruenceClass, ConstrainedForm, DiagonalForm, PolySum,
    ReductionData, SquareRep, Witness,
};
use crate::oracles::Builtin;
use crate::repr::{coverage, find_diag, represent, SieveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// `x(x+1) + y(2y+1) + z(3z+1)`
    I,
    /// `x(x+1) + y(2y+1) + z(4z+1)`
    II,
    /// `x(x+1) + y(2y+1) + z(5z+1)`
    III,
    /// `x(2x+1) + y(2y+1) + z(4z+1)`
    IV,
    /// `x(2x+1) + y(2y+1) + z(5z+1)`
    V,
    /// `x(2x+1) + y(3y+1) + z(3z+1)`
    VI,
    /// `x(2x+1) + y(3y+1) + z(4z+1)`
    VII,
    /// `3x^2 + y(3y+1) + z(3z+2)`
    A,
    /// `x(3x+1) + y(3y+1) + z(3z+2)`
    B0,
    /// `x(3x+1) + y(3y+2) + z(3z+2)`
    B1,
    /// `x(3x+1) + y(3y+2) + z(3z+3)`
    C,
    /// `x(4x+1) + y(4y+2) + z(4z+3)`
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Constructive,
    Search,
}

impl Clause {
    pub const ALL: [Clause; 12] = [
        Clause::I,
        Clause::II,
        Clause::III,
        Clause::IV,
        Clause::V,
        Clause::VI,
        Clause::VII,
        Clause::A,
        Clause::B0,
        Clause::B1,
        Clause::C,
        Clause::D,
    ];

    pub const TRIPLES: [Clause; 7] = [
        Clause::I,
        Clause::II,
        Clause::III,
        Clause::IV,
        Clause::V,
        Clause::VI,
        Clause::VII,
    ];

    pub const QUADRUPLES: [Clause; 5] = [Clause::A, Clause::B0, Clause::B1, Clause::C, Clause::D];

    pub fn tag(self) -> &'static str {
        match self {
            Clause::I => "(i)",
            Clause::II => "(ii)",
            Clause::III => "(iii)",
            Clause::IV => "(iv)",
            Clause::V => "(v)",
            Clause::VI => "(vi)",
            Clause::VII => "(vii)",
            Clause::A => "(a)",
            Clause::B0 => "(b) delta=0",
            Clause::B1 => "(b) delta=1",
            Clause::C => "(c)",
            Clause::D => "(d)",
        }
    }

    /// `(a, b, c)` for the `x(ax+1)+y(by+1)+z(cz+1)` clauses.
    pub fn triple(self) -> Option<(u64, u64, u64)> {
        Some(match self {
            Clause::I => (1, 2, 3),
            Clause::II => (1, 2, 4),
            Clause::III => (1, 2, 5),
            Clause::IV => (2, 2, 4),
            Clause::V => (2, 2, 5),
            Clause::VI => (2, 3, 3),
            Clause::VII => (2, 3, 4),
            _ => return None,
        })
    }

    /// `(a, b, c, d)` for the `x(ax+b)+y(ay+c)+z(az+d)` clauses.
    pub fn quadruple(self) -> Option<(u64, u64, u64, u64)> {
        Some(match self {
            Clause::A => (3, 0, 1, 2),
            Clause::B0 => (3, 1, 1, 2),
            Clause::B1 => (3, 1, 2, 2),
            Clause::C => (3, 1, 2, 3),
            Clause::D => (4, 1, 2, 3),
            _ => return None,
        })
    }

    pub fn for_triple(t: (u64, u64, u64)) -> Option<Clause> {
        Self::TRIPLES.into_iter().find(|c| c.triple() == Some(t))
    }

    pub fn for_quadruple(q: (u64, u64, u64, u64)) -> Option<Clause> {
        Self::QUADRUPLES
            .into_iter()
            .find(|c| c.quadruple() == Some(q))
    }

    pub fn poly(self) -> PolySum {
        if let Some((a, b, c)) = self.triple() {
            PolySum::unit_linear(a, b, c)
        } else {
            let (a, b, c, d) = self
                .quadruple()
                .expect("every clause is a triple or quadruple");
            PolySum::shared_leading(a, b, c, d)
        }
        .expect("positive leading coefficients")
    }

    /// The displayed identity this clause proves, written out by hand.
    pub fn recipe(self) -> Recipe {
        // (multiplier, constant, coefficients, (residue, modulus) per variable)
        let (multiplier, constant, coeffs, classes, steps): RecipeRow = match self {
            Clause::I => (
                24,
                11,
                [6, 3, 2],
                [(1, 2), (1, 4), (1, 6)],
                &[
                    "24n+11 = u^2+v^2+w^2 with u, v, w odd",
                    "rotate to w^2 + 2((u+v)/2)^2 + 2((u-v)/2)^2, even part first",
                    "if 3 divides the odd half, rewrite w^2+2t^2 with odd parts prime to 3",
                    "rewrite r^2+2s^2 = 3r0^2+6s0^2 (smallest |r0|)",
                    "24n+11 = 6(2x+1)^2+3(4y+1)^2+2(6z+1)^2",
                ],
            ),
            Clause::II => (
                16,
                7,
                [4, 2, 1],
                [(1, 2), (1, 4), (1, 8)],
                &[
                    "32n+14 = (2s+1)^2+(2t+1)^2+(2v)^2",
                    "16n+7 = (s+t+1)^2+(s-t)^2+2v^2 = (2u)^2+w^2+2v^2",
                    "16n+7 = 4(2x+1)^2+2(4y+1)^2+(8z+1)^2",
                ],
            ),
            Clause::III => (
                40,
                17,
                [10, 5, 2],
                [(1, 2), (1, 4), (1, 10)],
                &[
                    "40n+17 = 10u^2+5v^2+2w^2 (outside E(10x^2+5y^2+2z^2))",
                    "40n+17 = 10(2x+1)^2+5(4y+1)^2+2(10z+1)^2",
                ],
            ),
            Clause::IV => (
                16,
                5,
                [2, 2, 1],
                [(1, 4), (1, 4), (1, 8)],
                &[
                    "16n+5 = (2u)^2+(2v)^2+w^2",
                    "rotate to 2(u+v)^2+2(u-v)^2+w^2",
                    "16n+5 = 2(4x+1)^2+2(4y+1)^2+(8z+1)^2",
                ],
            ),
            Clause::V => (
                40,
                12,
                [5, 5, 2],
                [(1, 4), (1, 4), (1, 10)],
                &[
                    "20n+6 = 5u^2+5v^2+w^2 with w odd (descent construction)",
                    "double to 5(u+v)^2+5(u-v)^2+2w^2",
                    "40n+12 = 5(4x+1)^2+5(4y+1)^2+2(10z+1)^2",
                ],
            ),
            Clause::VI => (
                24,
                7,
                [3, 2, 2],
                [(1, 4), (1, 6), (1, 6)],
                &[
                    "24n+7 = u^2+v^2+3w^2 (outside E(x^2+y^2+3z^2))",
                    "rotate to 3w^2+2((u+v)/2)^2+2((u-v)/2)^2",
                    "24n+7 = 3(4x+1)^2+2(6y+1)^2+2(6z+1)^2",
                ],
            ),
            Clause::VII => (
                48,
                13,
                [6, 4, 3],
                [(1, 4), (1, 6), (1, 8)],
                &[
                    "48n+13 = X^2+3Y^2+6Z^2 with X even (48n+13 is not a square)",
                    "48n+13 = 6Z^2+4(X/2)^2+3Y^2",
                    "48n+13 = 6(4x+1)^2+4(6y+1)^2+3(8z+1)^2",
                ],
            ),
            Clause::A => (
                12,
                5,
                [1, 1, 1],
                [(0, 6), (1, 6), (2, 6)],
                &["12n+5 = u^2+v^2+36x^2", "12n+5 = 36x^2+(6y+1)^2+(6z+2)^2"],
            ),
            Clause::B0 => (
                12,
                6,
                [1, 1, 1],
                [(1, 6), (1, 6), (2, 6)],
                &[
                    "12n+6 = u^2+v^2+w^2 with 3 not dividing uvw",
                    "12n+6 = (6x+1)^2+(6y+1)^2+(6z+2)^2",
                ],
            ),
            Clause::B1 => (
                12,
                9,
                [1, 1, 1],
                [(1, 6), (2, 6), (2, 6)],
                &[
                    "12n+9 = u^2+v^2+w^2 with 3 not dividing uvw",
                    "12n+9 = (6x+1)^2+(6y+2)^2+(6z+2)^2",
                ],
            ),
            Clause::C => (
                12,
                14,
                [1, 1, 1],
                [(1, 6), (2, 6), (3, 6)],
                &[
                    "6(n+1)+1 = u^2+v^2+2w^2 with 3 not dividing uvw",
                    "12n+14 = (u+v)^2+(u-v)^2+(2w)^2",
                    "12n+14 = (6x+1)^2+(6y+2)^2+(6z+3)^2",
                ],
            ),
            Clause::D => (
                16,
                14,
                [1, 1, 1],
                [(1, 8), (2, 8), (3, 8)],
                &[
                    "16n+14 = u^2+v^2+w^2 with u, v odd and w even",
                    "16n+14 = (8x+1)^2+(8y+2)^2+(8z+3)^2",
                ],
            ),
        };
        Recipe {
            clause: self,
            poly: self.poly(),
            multiplier,
            constant,
            target_form: ConstrainedForm::new(
                DiagonalForm::new(coeffs).expect("positive"),
                classes.map(|(r, m)| CongruenceClass::new(m, r).expect("valid class")),
            ),
            steps,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

type RecipeRow = (u64, u64, [u64; 3], [(i64, u64); 3], &'static [&'static str]);

/// Hand-transcribed form of one constructive identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub clause: Clause,
    pub poly: PolySum,
    pub multiplier: u64,
    pub constant: u64,
    pub target_form: ConstrainedForm,
    pub steps: &'static [&'static str],
}

impl Recipe {
    /// Whether the transcription coincides with the generic reduction.
    pub fn matches_reduction(&self) -> bool {
        let rd = reduce(&self.poly);
        rd.multiplier() == self.multiplier
            && rd.constant == self.constant
            && rd.constrained == self.target_form
    }
}

/// Everything a construction produced for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseTrace {
    pub clause: Clause,
    pub n: u64,
    /// Representation of `M n + C` just before sign and order normalization.
    pub intermediate: SquareRep,
    /// The normalized `(w1, w2, w3)` in the target residue classes.
    pub constrained: [i64; 3],
    pub witness: Witness,
}

/// Run the constructive argument for `clause` at `n`.
pub fn construct(clause: Clause, n: u64) -> Result<ClauseTrace> {
    let rd = reduce(&clause.poly());
    let m = rd.target(n);
    let fail = |step: String| Error::Construction {
        clause: clause.tag(),
        n,
        step,
    };
    let odd = |v: i64| v % 2 != 0;
    let three = DiagonalForm::new([1, 1, 1]).expect("positive");
    let mu = m as u64;

    // each arm yields candidate orderings of the intermediate values
    let candidates: Vec<[i64; 3]> = match clause {
        Clause::I => {
            let [u, v, w] = find_diag(&three, mu, |t| t.iter().all(|&x| odd(x)))
                .ok_or_else(|| fail("24n+11 is not a sum of three odd squares".into()))?;
            let (mut ub, mut vb) = ((u + v) / 2, (u - v) / 2);
            if odd(ub) {
                std::mem::swap(&mut ub, &mut vb);
            }
            if odd(ub) || !odd(vb) {
                return Err(fail(format!("halves {ub}, {vb} do not split by parity")));
            }
            let (r, s, t) = if vb % 3 != 0 {
                (w, ub, vb)
            } else {
                let mult3 = (w * w + 2 * vb * vb) as u64;
                let (s2, t2) = lemma23i_odd_where(mult3, |a, b| a % 3 != 0 && b % 3 != 0)
                    .map_err(|e| fail(format!("rewriting w^2+2t^2 = {mult3}: {e}")))?;
                (s2, ub, t2)
            };
            if t % 2 == 0 || t % 3 == 0 {
                return Err(fail(format!("t = {t} is not prime to 6")));
            }
            let big = r * r + 2 * s * s;
            if big % 3 != 0 {
                return Err(fail(format!("r^2+2s^2 = {big} is not a multiple of 3")));
            }
            let (r0, s0) = (0..=isqrt(big / 3).unwrap_or(0))
                .find_map(|r0| {
                    let rest = big - 3 * r0 * r0;
                    (rest % 6 == 0)
                        .then(|| exact_sqrt(rest / 6))
                        .flatten()
                        .map(|s0| (r0, s0))
                })
                .ok_or_else(|| fail(format!("{big} is not 3r0^2+6s0^2")))?;
            vec![[s0, r0, t]]
        }
        Clause::II => {
            let m2 = 2 * mu;
            let [a, b, c] = find_diag(&three, m2, |t| odd(t[0]) && odd(t[1]) && !odd(t[2]))
                .ok_or_else(|| fail("32n+14 has no odd+odd+even three-square form".into()))?;
            let (s, t, v) = ((a - 1) / 2, (b - 1) / 2, c / 2);
            let (p, q) = (s + t + 1, s - t);
            let (even, w) = if odd(p) { (q, p) } else { (p, q) };
            vec![[even / 2, v, w]]
        }
        Clause::III => {
            if Builtin::Dickson1052.family().member(mu) {
                return Err(fail(format!("{mu} lies in E(10x^2+5y^2+2z^2)")));
            }
            let t = find_diag(&Builtin::Dickson1052.form(), mu, |_| true)
                .ok_or_else(|| fail("40n+17 is not 10u^2+5v^2+2w^2".into()))?;
            vec![t]
        }
        Clause::IV => {
            let [a, b, w] = find_diag(&three, mu, |t| !odd(t[0]) && !odd(t[1]) && odd(t[2]))
                .ok_or_else(|| fail("16n+5 has no even+even+odd three-square form".into()))?;
            let (u, v) = (a / 2, b / 2);
            vec![[u + v, u - v, w]]
        }
        Clause::V => {
            let [u, v, w] = lemma22_construct(n, 6)?;
            vec![[u + v, u - v, w]]
        }
        Clause::VI => {
            if Builtin::Dickson113.family().member(mu) {
                return Err(fail(format!("{mu} lies in E(x^2+y^2+3z^2)")));
            }
            let [u, v, w] = find_diag(&Builtin::Dickson113.form(), mu, |_| true)
                .ok_or_else(|| fail("24n+7 is not u^2+v^2+3w^2".into()))?;
            if !odd(w) {
                return Err(fail(format!("w = {w} is even")));
            }
            vec![[w, (u + v) / 2, (u - v) / 2]]
        }
        Clause::VII => {
            if is_square(m) {
                return Err(fail(format!("48n+13 = {m} is a square")));
            }
            let [x, y, z] = lemma23iii_rep(8 * n + 2, 0)?;
            vec![[z, x / 2, y]]
        }
        Clause::A => {
            let f = DiagonalForm::new([1, 1, 36]).expect("positive");
            let [u, v, x] = find_diag(&f, mu, |_| true)
                .ok_or_else(|| fail("12n+5 is not u^2+v^2+36x^2".into()))?;
            vec![[6 * x, u, v], [6 * x, v, u]]
        }
        Clause::B0 | Clause::B1 => {
            let [u, v, w] = find_diag(&three, mu, |t| t.iter().all(|&x| x % 3 != 0))
                .ok_or_else(|| fail("no three-square form with all parts prime to 3".into()))?;
            permutations([u, v, w])
        }
        Clause::C => {
            let [u, v, w] = lemma31_rep(n + 1)?;
            let (p, q) = (u + v, u - v);
            vec![[p, 2 * w, q], [q, 2 * w, p]]
        }
        Clause::D => {
            let [u, v, w] = find_diag(&three, mu, |t| odd(t[0]) && odd(t[1]) && !odd(t[2]))
                .ok_or_else(|| fail("16n+14 has no odd+odd+even three-square form".into()))?;
            vec![[u, w, v], [v, w, u]]
        }
    };
    place(clause, n, &rd, candidates)
}

/// Try each ordering, fixing signs per coordinate, and lift the first fit.
fn place(
    clause: Clause,
    n: u64,
    rd: &ReductionData,
    candidates: Vec<[i64; 3]>,
) -> Result<ClauseTrace> {
    let coeffs = rd.constrained.form.coeffs();
    let intermediate = SquareRep::new(coeffs.iter().copied().zip(candidates[0]).collect());
    if intermediate.total() != rd.target(n) as i128 {
        return Err(Error::Construction {
            clause: clause.tag(),
            n,
            step: format!(
                "intermediate {intermediate} misses the target {}",
                rd.target(n)
            ),
        });
    }
    for cand in &candidates {
        let signed: Result<Vec<i64>> = cand
            .iter()
            .zip(&rd.constrained.classes)
            .map(|(&v, c)| normalize_sign(v, c.modulus(), c.residue()))
            .collect();
        let Ok(signed) = signed else { continue };
        let constrained = [signed[0], signed[1], signed[2]];
        let witness = lift(rd, constrained)?;
        if !verify(&rd.source, n, witness) {
            return Err(Error::Construction {
                clause: clause.tag(),
                n,
                step: format!("lifted witness {witness} does not verify"),
            });
        }
        return Ok(ClauseTrace {
            clause,
            n,
            intermediate,
            constrained,
            witness,
        });
    }
    let residues: Vec<_> = candidates[0]
        .iter()
        .zip(&rd.constrained.classes)
        .map(|(&v, c)| format!("{v} = {} mod {}", modp(v, c.modulus()), c.modulus()))
        .collect();
    Err(Error::Construction {
        clause: clause.tag(),
        n,
        step: format!(
            "no ordering or sign choice meets {} ({})",
            rd.constrained,
            residues.join(", ")
        ),
    })
}

fn permutations([a, b, c]: [i64; 3]) -> Vec<[i64; 3]> {
    vec![
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

fn by_method(clause: Clause, n: u64, method: Method) -> Result<Witness> {
    match method {
        Method::Constructive => construct(clause, n).map(|t| t.witness),
        Method::Search => search_witness(&clause.poly(), n),
    }
}

fn search_witness(p: &PolySum, n: u64) -> Result<Witness> {
    represent(p, n).ok_or_else(|| Error::NotFound {
        value: n,
        what: p.to_string(),
    })
}

pub fn thm12_witness(triple: (u64, u64, u64), n: u64, method: Method) -> Result<Witness> {
    let clause = Clause::for_triple(triple)
        .ok_or_else(|| Error::Unsupported(format!("{triple:?} has no constructive clause")))?;
    by_method(clause, n, method)
}

pub fn thm13_witness(quad: (u64, u64, u64, u64), n: u64, method: Method) -> Result<Witness> {
    let clause = Clause::for_quadruple(quad)
        .ok_or_else(|| Error::Unsupported(format!("{quad:?} has no constructive clause")))?;
    by_method(clause, n, method)
}

/// Further universal sums, handled by search only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MiscSum {
    /// `x(ax+1)+y(by+1)+z(cz+1)` for `(1,1,2), (1,2,2), (2,2,2), (2,2,3)`.
    Triple(u64, u64, u64),
    /// `x(ax+b)+y(ay+c)+z(az+d)` for the five quadruples with `a <= 2`.
    Quadruple(u64, u64, u64, u64),
    /// `x^2 + y(3y+1) + z(3z+2)`
    SquareThree,
    /// `x^2 + y(4y+1) + z(4z+3)`
    SquareFour,
}

impl MiscSum {
    pub const ALL: [MiscSum; 11] = [
        MiscSum::Triple(1, 1, 2),
        MiscSum::Triple(1, 2, 2),
        MiscSum::Triple(2, 2, 2),
        MiscSum::Triple(2, 2, 3),
        MiscSum::Quadruple(1, 0, 0, 1),
        MiscSum::Quadruple(1, 0, 1, 1),
        MiscSum::Quadruple(2, 0, 0, 1),
        MiscSum::Quadruple(2, 0, 1, 1),
        MiscSum::Quadruple(2, 1, 1, 1),
        MiscSum::SquareThree,
        MiscSum::SquareFour,
    ];

    pub fn poly(self) -> PolySum {
        match self {
            MiscSum::Triple(a, b, c) => PolySum::unit_linear(a, b, c),
            MiscSum::Quadruple(a, b, c, d) => PolySum::shared_leading(a, b, c, d),
            MiscSum::SquareThree => PolySum::from_pairs([(1, 0), (3, 1), (3, 2)]),
            MiscSum::SquareFour => PolySum::from_pairs([(1, 0), (4, 1), (4, 3)]),
        }
        .expect("positive leading coefficients")
    }
}

impl fmt::Display for MiscSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly().fmt(f)
    }
}

pub fn misc_universal_witness(tag: MiscSum, n: u64) -> Result<Witness> {
    if !MiscSum::ALL.contains(&tag) {
        return Err(Error::Unsupported(format!("{tag:?}")));
    }
    search_witness(&tag.poly(), n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeReport {
    pub limit: u64,
    /// `n` where representability by the polynomial and solvability of
    /// `168n + 41 = 21x^2 + 14y^2 + 6z^2` disagree.
    pub mismatches: Vec<u64>,
    /// `n` not represented by the polynomial.
    pub unrepresented: Vec<u64>,
}

/// Compare `x(2x+1)+y(3y+1)+z(7z+1) = n` with `21x^2+14y^2+6z^2 = 168n+41` for all `n <= limit`.
pub fn remark12_bridge(limit: u64) -> Result<BridgeReport> {
    remark12_bridge_with(limit, &SieveOptions::default())
}

pub fn remark12_bridge_with(limit: u64, opts: &SieveOptions) -> Result<BridgeReport> {
    let poly = PolySum::unit_linear(2, 3, 7).expect("positive");
    let diag = DiagonalForm::new([21, 14, 6]).expect("positive");
    let lhs = coverage(poly, limit, opts)?;
    let rhs = coverage(diag, 168 * limit + 41, opts)?;
    let mut mismatches = Vec::new();
    let mut unrepresented = Vec::new();
    for n in 0..=limit {
        let l = lhs.contains(n);
        if l != rhs.contains(168 * n + 41) {
            mismatches.push(n);
        }
        if !l {
            unrepresented.push(n);
        }
    }
    Ok(BridgeReport {
        limit,
        mismatches,
        unrepresented,
    })
}
