//! Machine-readable verification results.
//!
//! All numbers that can exceed 64 bits are carried as decimal strings.

use num_bigint::BigInt;
use serde::Serialize;

use crate::poly::{IntPoly, MultiPoly, Ring, TruncatedSeries};

/// `serialize_with` helper writing big integers as decimal strings.
pub fn decimal_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// One failing coefficient of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Power of `z` for series identities, otherwise the row index `n`.
    pub index: usize,
    /// The monomial whose coefficients differ, e.g. `x^3` or `[1,0,2,1]`.
    pub term: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    /// Largest index compared (series order or `n_max`).
    pub bound: usize,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>, bound: usize, mismatches: Vec<Mismatch>) -> Self {
        Self {
            identity: identity.into(),
            bound,
            passed: mismatches.is_empty(),
            mismatches,
        }
    }
}

pub fn all_passed(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Appends one mismatch per differing coefficient of `lhs` and `rhs`.
pub fn diff_int_polys(index: usize, lhs: &IntPoly, rhs: &IntPoly, out: &mut Vec<Mismatch>) {
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    for k in 0..len {
        let (a, b) = (lhs.coeff(k), rhs.coeff(k));
        if a != b {
            out.push(Mismatch {
                index,
                term: format!("x^{k}"),
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
        }
    }
}

pub fn diff_multi_polys(index: usize, lhs: &MultiPoly, rhs: &MultiPoly, out: &mut Vec<Mismatch>) {
    let diff = lhs - rhs;
    for (e, _) in diff.terms() {
        out.push(Mismatch {
            index,
            term: format!("[{},{},{},{}]", e[0], e[1], e[2], e[3]),
            lhs: lhs.coeff(e).to_string(),
            rhs: rhs.coeff(e).to_string(),
        });
    }
}

pub fn diff_ints(index: usize, term: &str, lhs: &BigInt, rhs: &BigInt, out: &mut Vec<Mismatch>) {
    if lhs != rhs {
        out.push(Mismatch {
            index,
            term: term.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
}

/// Coefficient types that can list their differing monomials.
pub trait Diffable: Ring {
    fn diff(index: usize, lhs: &Self, rhs: &Self, out: &mut Vec<Mismatch>);
}

impl Diffable for IntPoly {
    fn diff(index: usize, lhs: &Self, rhs: &Self, out: &mut Vec<Mismatch>) {
        diff_int_polys(index, lhs, rhs, out)
    }
}

impl Diffable for MultiPoly {
    fn diff(index: usize, lhs: &Self, rhs: &Self, out: &mut Vec<Mismatch>) {
        diff_multi_polys(index, lhs, rhs, out)
    }
}

impl Diffable for BigInt {
    fn diff(index: usize, lhs: &Self, rhs: &Self, out: &mut Vec<Mismatch>) {
        diff_ints(index, "1", lhs, rhs, out)
    }
}

/// Compares two series coefficientwise up to the smaller order.
pub fn compare_series<C: Diffable>(
    identity: &str,
    lhs: &TruncatedSeries<C>,
    rhs: &TruncatedSeries<C>,
) -> IdentityCheck {
    let bound = lhs.order().min(rhs.order());
    let mut mismatches = Vec::new();
    for n in 0..=bound {
        C::diff(n, lhs.coeff(n), rhs.coeff(n), &mut mismatches);
    }
    IdentityCheck::new(identity, bound, mismatches)
}
