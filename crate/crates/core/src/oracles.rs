//! Closed-form exceptional sets of a few classical diagonal forms, with
//! membership tests and sieve cross-checks.

use crate::error::Result;
use crate::model::DiagonalForm;
use crate::repr::{coverage, SieveOptions};

/// `{ s^k (m l + r) : k, l >= 0 }`, or just `{ m l + r }` when `scale` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pattern {
    pub scale: Option<u64>,
    pub modulus: u64,
    pub residue: u64,
}

impl Pattern {
    pub const fn scaled(scale: u64, modulus: u64, residue: u64) -> Self {
        Pattern {
            scale: Some(scale),
            modulus,
            residue,
        }
    }

    pub const fn unscaled(modulus: u64, residue: u64) -> Self {
        Pattern {
            scale: None,
            modulus,
            residue,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        let mut v = n;
        loop {
            if v % self.modulus == self.residue {
                return true;
            }
            match self.scale {
                Some(s) if v > 0 && v.is_multiple_of(s) => v /= s,
                _ => return false,
            }
        }
    }
}

/// A union of [`Pattern`]s plus a finite explicit set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalFamily {
    pub patterns: Vec<Pattern>,
    pub extra: Vec<u64>,
    pub label: String,
}

impl ExceptionalFamily {
    pub fn member(&self, n: u64) -> bool {
        member(self, n)
    }
}

pub fn member(fam: &ExceptionalFamily, n: u64) -> bool {
    fam.extra.contains(&n) || fam.patterns.iter().any(|p| p.contains(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `E(x^2+y^2+z^2) = {4^k(8l+7)}`
    GaussLegendre,
    /// `E(x^2+y^2+3z^2) = {9^k(9l+6)}`
    Dickson113,
    /// `E(10x^2+5y^2+2z^2) = {8k+3} ∪ {25^k(5l+1)} ∪ {25^k(5l+4)}`
    Dickson1052,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [
        Builtin::GaussLegendre,
        Builtin::Dickson113,
        Builtin::Dickson1052,
    ];

    pub fn family(self) -> ExceptionalFamily {
        let (patterns, label) = match self {
            Builtin::GaussLegendre => (
                vec![Pattern::scaled(4, 8, 7)],
                "E(x^2+y^2+z^2) = {4^k(8l+7)}",
            ),
            Builtin::Dickson113 => (
                vec![Pattern::scaled(9, 9, 6)],
                "E(x^2+y^2+3z^2) = {9^k(9l+6)}",
            ),
            Builtin::Dickson1052 => (
                vec![
                    Pattern::unscaled(8, 3),
                    Pattern::scaled(25, 5, 1),
                    Pattern::scaled(25, 5, 4),
                ],
                "E(10x^2+5y^2+2z^2) = {8k+3} u {25^k(5l+1), 25^k(5l+4)}",
            ),
        };
        ExceptionalFamily {
            patterns,
            extra: Vec::new(),
            label: label.to_string(),
        }
    }

    pub fn form(self) -> DiagonalForm {
        let c = match self {
            Builtin::GaussLegendre => [1, 1, 1],
            Builtin::Dickson113 => [1, 1, 3],
            Builtin::Dickson1052 => [10, 5, 2],
        };
        DiagonalForm::new(c).expect("positive coefficients")
    }
}

pub fn builtin_families() -> Vec<ExceptionalFamily> {
    Builtin::ALL.iter().map(|b| b.family()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub label: String,
    pub form: String,
    pub limit: u64,
    /// Every `n <= limit` where the formula and the sieve disagree.
    pub discrepancies: Vec<u64>,
}

impl CrosscheckReport {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn crosscheck(
    fam: &ExceptionalFamily,
    f: &DiagonalForm,
    limit: u64,
) -> Result<CrosscheckReport> {
    crosscheck_with(fam, f, limit, &SieveOptions::default())
}

pub fn crosscheck_with(
    fam: &ExceptionalFamily,
    f: &DiagonalForm,
    limit: u64,
    opts: &SieveOptions,
) -> Result<CrosscheckReport> {
    let cov = coverage(*f, limit, opts)?;
    let discrepancies = (0..=limit)
        .filter(|&n| member(fam, n) == cov.contains(n))
        .collect();
    Ok(CrosscheckReport {
        label: fam.label.clone(),
        form: f.to_string(),
        limit,
        discrepancies,
    })
}
