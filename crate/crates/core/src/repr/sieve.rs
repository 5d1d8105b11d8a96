//! Exceptional-set sieves.
//!
//! A ternary target is a sum of three one-variable pieces, so its value set
//! is the sumset `A1 + A2 + A3` of three sorted value lists. Each list is
//! shifted by its own minimum so the sumset lives in `[0, span]`, where
//! `n = t + base` for `base = min A1 + min A2 + min A3`.
//!
//! [`Strategy::ShiftOr`] builds the pair sumset `A1 + A2` as a bit array and
//! ORs one shifted copy of it per element of the shortest list. Cost is
//! `|A1 + A2| + |A3| * span / 64` word operations.
//!
//! [`Strategy::Lattice`] is the plain triple loop with early cutoff at each
//! level; cost is the number of lattice triples with value `<= limit`.
//!
//! Both split the outer list into contiguous chunks, one per worker, and
//! merge with bitwise OR, so the result does not depend on the thread count.

use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::model::{CongruenceClass, ConstrainedForm, DiagonalForm, PolySum, Term};

use super::search::ClassMembers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SieveTarget {
    Poly(PolySum),
    Diagonal(DiagonalForm),
    Constrained(ConstrainedForm),
}

impl From<PolySum> for SieveTarget {
    fn from(p: PolySum) -> Self {
        SieveTarget::Poly(p)
    }
}

impl From<DiagonalForm> for SieveTarget {
    fn from(f: DiagonalForm) -> Self {
        SieveTarget::Diagonal(f)
    }
}

impl From<ConstrainedForm> for SieveTarget {
    fn from(f: ConstrainedForm) -> Self {
        SieveTarget::Constrained(f)
    }
}

impl fmt::Display for SieveTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SieveTarget::Poly(p) => p.fmt(f),
            SieveTarget::Diagonal(d) => d.fmt(f),
            SieveTarget::Constrained(c) => c.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    ShiftOr,
    Lattice,
}

#[derive(Debug, Clone, Copy)]
pub struct SieveOptions {
    pub threads: usize,
    /// Upper bound on the bit arrays allocated across all workers.
    pub memory_cap_bytes: u64,
    pub strategy: Strategy,
}

impl Default for SieveOptions {
    fn default() -> Self {
        SieveOptions {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            memory_cap_bytes: 1 << 30,
            strategy: Strategy::ShiftOr,
        }
    }
}

impl SieveOptions {
    pub fn single_threaded() -> Self {
        SieveOptions {
            threads: 1,
            ..Default::default()
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveReport {
    pub limit: u64,
    /// Strictly increasing, all `<= limit`.
    pub exceptions: Vec<u64>,
    pub elapsed: Duration,
    pub form: String,
}

/// Which integers in `[0, limit]` a target represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    limit: u64,
    base: i64,
    span: i64,
    words: Vec<u64>,
}

impl Coverage {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn contains(&self, n: u64) -> bool {
        assert!(
            n <= self.limit,
            "{n} is beyond the sieved limit {}",
            self.limit
        );
        let t = n as i64 - self.base;
        t >= 0 && t <= self.span && bit(&self.words, t as usize)
    }

    pub fn exceptions(&self) -> Vec<u64> {
        (0..=self.limit).filter(|&n| !self.contains(n)).collect()
    }

    /// Raw bit array; exposed so callers can compare worker configurations.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

pub fn exceptional_set(target: impl Into<SieveTarget>, limit: u64) -> Result<SieveReport> {
    exceptional_set_with(target, limit, &SieveOptions::default())
}

pub fn exceptional_set_with(
    target: impl Into<SieveTarget>,
    limit: u64,
    opts: &SieveOptions,
) -> Result<SieveReport> {
    let target = target.into();
    let start = Instant::now();
    let cov = coverage(target, limit, opts)?;
    let exceptions = cov.exceptions();
    Ok(SieveReport {
        limit,
        exceptions,
        elapsed: start.elapsed(),
        form: target.to_string(),
    })
}

/// One summand of a ternary target, viewed as a one-variable value set.
#[derive(Debug, Clone, Copy)]
enum Piece {
    Term(Term),
    Square { coeff: u64, class: CongruenceClass },
}

impl Piece {
    fn min_value(&self) -> i64 {
        match *self {
            Piece::Term(t) => t.min_value() as i64,
            Piece::Square { coeff, class } => {
                let r = class.residue();
                let k = r.min(class.modulus() as i64 - r);
                coeff as i64 * k * k
            }
        }
    }

    /// Sorted distinct values `<= upper`.
    fn values_upto(&self, upper: i64) -> Vec<i64> {
        let mut out = Vec::new();
        match *self {
            Piece::Term(t) => {
                // convex in x, so the sublevel set is an interval around the vertex
                let v = (-(t.b() as i64)).div_euclid(2 * t.a() as i64);
                let val = |x: i64| t.value(x) as i64;
                let mut x = v;
                while val(x) <= upper {
                    out.push(val(x));
                    x -= 1;
                }
                x = v + 1;
                while val(x) <= upper {
                    out.push(val(x));
                    x += 1;
                }
            }
            Piece::Square { coeff, class } => {
                if upper >= 0 {
                    let c = coeff as i64;
                    let max = crate::arith::isqrt(upper / c).unwrap_or(0);
                    out.extend(ClassMembers::new(class, max).map(|w| c * w * w));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn pieces(target: &SieveTarget) -> [Piece; 3] {
    match target {
        SieveTarget::Poly(p) => p.terms().map(Piece::Term),
        SieveTarget::Diagonal(d) => d.coeffs().map(|coeff| Piece::Square {
            coeff,
            class: CongruenceClass::ANY,
        }),
        SieveTarget::Constrained(cf) => {
            let c = cf.form.coeffs();
            std::array::from_fn(|i| Piece::Square {
                coeff: c[i],
                class: cf.classes[i],
            })
        }
    }
}

/// Bit array of represented values in `[0, limit]`.
pub fn coverage(
    target: impl Into<SieveTarget>,
    limit: u64,
    opts: &SieveOptions,
) -> Result<Coverage> {
    let target = target.into();
    let limit_i = i64::try_from(limit).map_err(|_| Error::ResourceLimit {
        limit,
        bytes: u64::MAX,
        cap: opts.memory_cap_bytes,
    })?;
    let pieces = pieces(&target);
    let mins = pieces.map(|p| p.min_value());
    let base: i64 = mins.iter().sum();
    let span = limit_i - base;
    if span < 0 {
        return Ok(Coverage {
            limit,
            base,
            span,
            words: Vec::new(),
        });
    }

    let nbits = span as usize + 1;
    let nwords = nbits.div_ceil(64);
    let threads = opts.threads.max(1);
    let copies = match opts.strategy {
        Strategy::ShiftOr => threads as u64 + 2,
        Strategy::Lattice => threads as u64 + 1,
    };
    let bytes = nwords as u64 * 8 * copies;
    if bytes > opts.memory_cap_bytes {
        return Err(Error::ResourceLimit {
            limit,
            bytes,
            cap: opts.memory_cap_bytes,
        });
    }

    let mut axes: Vec<Vec<usize>> = pieces
        .iter()
        .zip(mins)
        .map(|(p, lo)| {
            p.values_upto(span + lo)
                .into_iter()
                .map(|v| (v - lo) as usize)
                .collect()
        })
        .collect();
    // the shortest list goes outermost
    axes.sort_by_key(|a| a.len());
    let outer = axes.remove(0);
    let (a1, a2) = (&axes[0], &axes[1]);

    let chunk = outer.len().div_ceil(threads).max(1);
    let words = match opts.strategy {
        Strategy::ShiftOr => {
            let mut pair = vec![0u64; nwords];
            for &s1 in a1 {
                for &s2 in a2.iter().take_while(|&&s2| s1 + s2 < nbits) {
                    set_bit(&mut pair, s1 + s2);
                }
            }
            let pair = &pair;
            parallel_or(&outer, chunk, nwords, |dst, shifts| {
                for &s in shifts {
                    or_shifted(dst, pair, s);
                }
            })
        }
        Strategy::Lattice => parallel_or(&outer, chunk, nwords, |dst, outers| {
            for &s3 in outers {
                for &s2 in a2.iter().take_while(|&&s2| s3 + s2 < nbits) {
                    let partial = s3 + s2;
                    for &s1 in a1.iter().take_while(|&&s1| partial + s1 < nbits) {
                        set_bit(dst, partial + s1);
                    }
                }
            }
        }),
    };
    let mut words = words;
    mask_tail(&mut words, nbits);
    Ok(Coverage {
        limit,
        base,
        span,
        words,
    })
}

fn parallel_or<F>(outer: &[usize], chunk: usize, nwords: usize, work: F) -> Vec<u64>
where
    F: Fn(&mut [u64], &[usize]) + Sync,
{
    let chunks: Vec<&[usize]> = outer.chunks(chunk).collect();
    if chunks.len() <= 1 {
        let mut dst = vec![0u64; nwords];
        if let Some(c) = chunks.first() {
            work(&mut dst, c);
        }
        return dst;
    }
    let partials: Vec<Vec<u64>> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|c| {
                let work = &work;
                s.spawn(move || {
                    let mut dst = vec![0u64; nwords];
                    work(&mut dst, c);
                    dst
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sieve worker panicked"))
            .collect()
    });
    let mut iter = partials.into_iter();
    let mut acc = iter.next().expect("at least two chunks");
    for p in iter {
        for (a, b) in acc.iter_mut().zip(p) {
            *a |= b;
        }
    }
    acc
}

#[inline]
fn set_bit(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
fn bit(words: &[u64], i: usize) -> bool {
    words[i >> 6] >> (i & 63) & 1 == 1
}

/// `dst |= src << shift`, truncated to `dst.len()` words.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift >> 6;
    let bs = shift & 63;
    if ws >= dst.len() {
        return;
    }
    if bs == 0 {
        for (d, s) in dst[ws..].iter_mut().zip(src) {
            *d |= *s;
        }
    } else {
        let dst = &mut dst[ws..];
        dst[0] |= src[0] << bs;
        for (i, d) in dst.iter_mut().enumerate().skip(1) {
            *d |= (src[i] << bs) | (src[i - 1] >> (64 - bs));
        }
    }
}

fn mask_tail(words: &mut [u64], nbits: usize) {
    let rem = nbits & 63;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
}
