//! Real-root counting with Sturm sequences in exact integer arithmetic.
//!
//! Remainders are computed as sign-preserving pseudo-remainders and then
//! divided by their (positive) content, so every chain element is a positive
//! multiple of the corresponding rational Sturm remainder. Sign variations,
//! and hence root counts, are unchanged.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::t_recurrence_polys;
use crate::error::{Error, Result};
use crate::eulerian::binomial_eulerian_threeterm_polys;
use crate::poly::IntPoly;

/// An endpoint of a half-open interval `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn integer(v: i64) -> Self {
        Bound::Finite(BigRational::from_integer(BigInt::from(v)))
    }
}

/// `a - (lc(a)/lc(b)) x^d b`, scaled by `|lc(b)|` at each step so the result is
/// a positive multiple of the true remainder.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().unwrap().clone();
    let scale = lb.abs();
    let sign = BigInt::from(if lb.is_negative() { -1 } else { 1 });
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading().unwrap().clone();
        r = &r.scalar_mul(&scale) - &b.shift(dr - db).scalar_mul(&(&sign * &lr));
    }
    r.primitive_part()
}

fn normalize(p: &IntPoly) -> IntPoly {
    let p = p.primitive_part();
    if p.leading().is_some_and(|l| l.is_negative()) {
        -p
    } else {
        p
    }
}

/// Gcd in `Z[x]` up to a constant factor, normalized to a primitive
/// polynomial with positive leading coefficient.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut a, mut b) = (normalize(a), normalize(b));
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = normalize(&r);
    }
    a
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::Domain(
            "the zero polynomial has no squarefree part".into(),
        ));
    }
    let g = poly_gcd(p, &p.derivative());
    Ok(normalize(&normalize(p).div_exact(&g)?))
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn sign_at(p: &IntPoly, at: &Bound) -> i8 {
    let Some(d) = p.degree() else { return 0 };
    let lead = sign_of(p.leading().unwrap());
    match at {
        Bound::PosInf => lead,
        Bound::NegInf => {
            if d % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
        Bound::Finite(x) => match p.evaluate_rational(x).cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        },
    }
}

/// `p, p', -rem(p, p'), ...` with strictly decreasing degrees.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Domain("Sturm chain of the zero polynomial".into()));
        }
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = pseudo_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        Ok(Self { chain })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    /// Sign changes along the chain at `at`, zeros skipped.
    pub fn variations(&self, at: &Bound) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| sign_at(p, at))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots of a squarefree input in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

fn check_interval(lo: &Bound, hi: &Bound) -> Result<()> {
    let ok = match (lo, hi) {
        (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::Finite(a), Bound::Finite(b)) => a < b,
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain("interval (lo, hi] is empty".into()))
    }
}

/// Root counts of `p` in `(lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub distinct: usize,
    pub with_multiplicity: usize,
}

/// Counts real roots in `(lo, hi]`. A root of multiplicity `m` divides each
/// of `p, gcd(p,p'), ...` up to the `m`-th term, so summing the distinct counts
/// of that gcd tower recovers multiplicities.
pub fn count_real_roots(p: &IntPoly, lo: &Bound, hi: &Bound) -> Result<RootCount> {
    if p.is_zero() {
        return Err(Error::Domain(
            "cannot count roots of the zero polynomial".into(),
        ));
    }
    check_interval(lo, hi)?;
    let mut g = normalize(p);
    let mut counts = Vec::new();
    while g.degree().is_some_and(|d| d > 0) {
        let sf = squarefree_part(&g)?;
        counts.push(SturmChain::new(&sf)?.count(lo, hi));
        g = poly_gcd(&g, &g.derivative());
    }
    Ok(RootCount {
        distinct: counts.first().copied().unwrap_or(0),
        with_multiplicity: counts.iter().sum(),
    })
}

/// True iff every complex root is real. Nonzero constants count as real-rooted.
pub fn is_real_rooted(p: &IntPoly) -> Result<bool> {
    let d = p
        .degree()
        .ok_or_else(|| Error::Domain("the zero polynomial has no root count".into()))?;
    Ok(count_real_roots(p, &Bound::NegInf, &Bound::PosInf)?.with_multiplicity == d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealRootVerdict {
    pub n: usize,
    pub degree: usize,
    pub distinct_real_roots: usize,
    pub real_roots_with_multiplicity: usize,
    /// Roots in `(-∞, 0)`; equals the degree whenever a polynomial with
    /// positive coefficients is real-rooted.
    pub negative_real_roots: usize,
    pub real_rooted: bool,
}

pub fn verdict(n: usize, p: &IntPoly) -> Result<RealRootVerdict> {
    let degree = p
        .degree()
        .ok_or_else(|| Error::Domain(format!("polynomial {n} is zero")))?;
    let all = count_real_roots(p, &Bound::NegInf, &Bound::PosInf)?;
    // (-∞, 0] minus a possible root at 0.
    let nonpos = count_real_roots(p, &Bound::NegInf, &Bound::integer(0))?;
    let zero_mult = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    Ok(RealRootVerdict {
        n,
        degree,
        distinct_real_roots: all.distinct,
        real_roots_with_multiplicity: all.with_multiplicity,
        negative_real_roots: nonpos.with_multiplicity - zero_mult,
        real_rooted: all.with_multiplicity == degree,
    })
}

/// Polynomial families examined for real-rootedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Binomial-Eulerian `Ã_n(x)`.
    TildeA,
    /// `T_n(q)/q`.
    TOverQ,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::TildeA => "tildeA",
            Family::TOverQ => "t",
        }
    }

    pub fn polys(self, n_max: usize) -> Result<Vec<IntPoly>> {
        match self {
            Family::TildeA => Ok(binomial_eulerian_threeterm_polys(n_max)),
            Family::TOverQ => t_recurrence_polys(n_max)
                .iter()
                .map(|t| t.div_exact(&IntPoly::x()))
                .collect(),
        }
    }
}

/// Per-`n` verdicts for `n = 0..=n_max`, checked in parallel.
pub fn real_root_verdicts(family: Family, n_max: usize) -> Result<Vec<RealRootVerdict>> {
    family
        .polys(n_max)?
        .par_iter()
        .enumerate()
        .map(|(n, p)| verdict(n, p))
        .collect()
}

/// `∏ (x - r)` over `roots`.
pub fn from_roots(roots: &[i64]) -> IntPoly {
    roots.iter().fold(IntPoly::one(), |acc, &r| {
        &acc * &IntPoly::from_i64s(&[-r, 1])
    })
}
