//! Joint distributions of (exc, fix, cyc, fcyc) over `S_n` and `Q̂_{n+1}`,
//! and of (asc, bkone, bk, fbk) over `Q_n`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::combin::{binomial_row, pow2};
use crate::error::{Error, Result};
use crate::limits::EnumLimit;
use crate::perm::{par_fold_qhat, par_fold_sym, q_members, Permutation};
use crate::poly::{Exponents, IntPoly, MultiPoly, TruncatedSeries, Var};
use crate::report::{compare_series, diff_int_polys, IdentityCheck};

/// The set a multivariate distribution is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Carrier {
    /// `S_n`.
    Sym,
    /// `Q̂_{n+1}`.
    QHat,
    /// `Q_n`.
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultistatPoly {
    pub n: usize,
    pub carrier: Carrier,
    pub poly: MultiPoly,
}

fn collect_terms(counts: HashMap<Exponents, u64>) -> MultiPoly {
    MultiPoly::from_terms(counts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

fn merge(mut a: HashMap<Exponents, u64>, b: HashMap<Exponents, u64>) -> HashMap<Exponents, u64> {
    for (e, c) in b {
        *a.entry(e).or_default() += c;
    }
    a
}

/// Sums `x^{e0} y^{e1} q^{e2} p^{e3}` over `S_n`, skipping permutations
/// for which `weight` returns `None`.
fn sum_over_sym<F>(n: usize, limit: EnumLimit, weight: F) -> Result<MultiPoly>
where
    F: Fn(&Permutation) -> Option<Exponents> + Sync + Send,
{
    let counts = par_fold_sym(
        n,
        limit,
        HashMap::new,
        |acc, p| {
            if let Some(e) = weight(p) {
                *acc.entry(e).or_default() += 1;
            }
        },
        merge,
    )?;
    Ok(collect_terms(counts))
}

/// `A_n(x,y,q) = Σ_{π ∈ S_n} x^exc y^fix q^cyc`, with `A_0 = 1`.
pub fn a_xyq_enum(n: usize, limit: EnumLimit) -> Result<MultistatPoly> {
    let poly = if n == 0 {
        limit.check(0)?;
        MultiPoly::one()
    } else {
        sum_over_sym(n, limit, |p| {
            Some([p.exc() as u32, p.fix() as u32, p.cyc() as u32, 0])
        })?
    };
    Ok(MultistatPoly {
        n,
        carrier: Carrier::Sym,
        poly,
    })
}

/// `A_0..A_{n_max}`.
pub fn a_xyq_enum_all(n_max: usize, limit: EnumLimit) -> Result<Vec<MultiPoly>> {
    limit.check(n_max)?;
    (0..=n_max)
        .map(|n| a_xyq_enum(n, limit).map(|m| m.poly))
        .collect()
}

/// `Ã_n(x,y,q,p) = Σ_{σ ∈ Q̂_{n+1}} x^exc y^fix q^cyc p^fcyc`.
pub fn tilde_a_xyqp_enum(n: usize, limit: EnumLimit) -> Result<MultistatPoly> {
    let counts = par_fold_qhat(
        n + 1,
        limit,
        HashMap::new,
        |acc, p| {
            let form = p.cycle_form();
            let e = [
                p.exc() as u32,
                p.fix() as u32,
                form.cycles().len() as u32,
                form.cycles()[0].len() as u32,
            ];
            *acc.entry(e).or_default() += 1;
        },
        merge,
    )?;
    Ok(MultistatPoly {
        n,
        carrier: Carrier::QHat,
        poly: collect_terms(counts),
    })
}

pub fn tilde_a_xyqp_enum_all(n_max: usize, limit: EnumLimit) -> Result<Vec<MultiPoly>> {
    limit.check(n_max + 1)?;
    (0..=n_max)
        .map(|n| tilde_a_xyqp_enum(n, limit).map(|m| m.poly))
        .collect()
}

/// `ypq A_n + Σ_{k=1}^n C(n,k) x^k q p^{k+1} A_{n-k}`, given `A_0..A_n`.
pub fn tilde_a_xyqp_rec(n: usize, a: &[MultiPoly]) -> Result<MultistatPoly> {
    if a.len() <= n {
        return Err(Error::Domain(format!(
            "need A_0..A_{n}, got {} polynomials",
            a.len()
        )));
    }
    let row = binomial_row(n);
    let mut poly = MultiPoly::monomial(1, [0, 1, 1, 1]) * &a[n];
    for k in 1..=n {
        let term = MultiPoly::monomial(row[k].clone(), [k as u32, 0, 1, k as u32 + 1]);
        poly = poly + term * &a[n - k];
    }
    Ok(MultistatPoly {
        n,
        carrier: Carrier::QHat,
        poly,
    })
}

/// `Σ_{σ ∈ Q_n} x^asc y^bkone q^bk p^fbk`.
pub fn blockstat_enum(n: usize, limit: EnumLimit) -> Result<MultistatPoly> {
    let mut counts: HashMap<Exponents, u64> = HashMap::new();
    for p in q_members(n, limit)? {
        let blocks = p.blocks();
        let e = [
            p.asc() as u32,
            blocks.iter().filter(|b| b.len() == 1).count() as u32,
            blocks.len() as u32,
            blocks[0].len() as u32,
        ];
        *counts.entry(e).or_default() += 1;
    }
    Ok(MultistatPoly {
        n,
        carrier: Carrier::Q,
        poly: collect_terms(counts),
    })
}

fn multi_series(polys: Vec<MultiPoly>, order: usize) -> TruncatedSeries<MultiPoly> {
    TruncatedSeries::new(polys, order)
}

fn mono(e: Exponents) -> MultiPoly {
    MultiPoly::monomial(1, e)
}

/// `(e^{xpz} + y - 1) pq A(x,y,q;z)` against the enumerated `Ã_n`.
pub fn egf_tilde_multistat_check(
    a: &[MultiPoly],
    tilde: &[MultiPoly],
    order: usize,
) -> IdentityCheck {
    let a_series = multi_series(a.to_vec(), order);
    let factor = TruncatedSeries::exp(&mono([1, 0, 0, 1]), order).add(&TruncatedSeries::constant(
        mono([0, 1, 0, 0]) - MultiPoly::one(),
        order,
    ));
    let rhs = factor.mul(&a_series).scale(&mono([0, 0, 1, 1]));
    compare_series(
        "tildeA(x,y,q,p;z) = (e^{xpz} + y - 1) pq A(x,y,q;z)",
        &multi_series(tilde.to_vec(), order),
        &rhs,
    )
}

/// `A(x,y,q;z) = e^{yqz} A(x,0,q;z)`.
pub fn egf_fixed_point_check(a: &[MultiPoly], order: usize) -> IdentityCheck {
    let a_series = multi_series(a.to_vec(), order);
    let no_fixed = a_series.map(|c| c.substitute(Var::Y, &BigInt::from(0)));
    let rhs = TruncatedSeries::exp(&mono([0, 1, 1, 0]), order).mul(&no_fixed);
    compare_series("A(x,y,q;z) = e^{yqz} A(x,0,q;z)", &a_series, &rhs)
}

/// `(e^{z(x-1)} - x)^q A(x,1,q;z) = (1-x)^q` at a fixed positive integer `q`.
pub fn egf_brenti_check(a: &[MultiPoly], q: u32, order: usize) -> Result<IdentityCheck> {
    let qv = BigInt::from(q);
    let specialized: Vec<IntPoly> = a
        .iter()
        .map(|c| {
            c.substitute(Var::Y, &BigInt::one())
                .substitute(Var::Q, &qv)
                .to_univariate(Var::X)
                .ok_or_else(|| Error::Domain("A_n(x,y,q) has a p term".into()))
        })
        .collect::<Result<_>>()?;
    let a_series = TruncatedSeries::new(specialized, order);
    let base = TruncatedSeries::exp(&IntPoly::linear(-1), order)
        .sub(&TruncatedSeries::constant(IntPoly::x(), order));
    let lhs = base.pow(q as usize).mul(&a_series);
    let rhs = TruncatedSeries::constant(IntPoly::from_i64s(&[1, -1]).pow(q as usize), order);
    Ok(compare_series(
        &format!("(e^{{z(x-1)}} - x)^{q} A(x,1,{q};z) = (1-x)^{q}"),
        &lhs,
        &rhs,
    ))
}

/// `(e^{z(x-y)} - x e^{(1-y)z})^q A(x,y,q;z) = (1-x)^q` at a fixed
/// positive integer `q`, the closed form with fixed points kept.
pub fn egf_closed_form_check(a: &[MultiPoly], q: u32, order: usize) -> IdentityCheck {
    let qv = BigInt::from(q);
    let a_series = multi_series(a.iter().map(|c| c.substitute(Var::Q, &qv)).collect(), order);
    let x = mono([1, 0, 0, 0]);
    let y = mono([0, 1, 0, 0]);
    let base = TruncatedSeries::exp(&(&x - &y), order)
        .sub(&TruncatedSeries::exp(&(MultiPoly::one() - &y), order).scale(&x));
    let lhs = base.pow(q as usize).mul(&a_series);
    let rhs = TruncatedSeries::constant((MultiPoly::one() - x).pow(q as usize), order);
    compare_series(
        &format!("(e^{{z(x-y)}} - x e^{{(1-y)z}})^{q} A(x,y,{q};z) = (1-x)^{q}"),
        &lhs,
        &rhs,
    )
}

/// Every multivariate generating-function identity at order `N`. Both
/// `A_N` (over `S_N`) and `Ã_N` (over `Q̂_{N+1}`) are enumerated, so
/// `N + 1` must be within the limit.
pub fn egf_multistat_checks(order: usize, limit: EnumLimit) -> Result<Vec<IdentityCheck>> {
    let a = a_xyq_enum_all(order, limit)?;
    let tilde = tilde_a_xyqp_enum_all(order, limit)?;
    Ok(vec![
        egf_tilde_multistat_check(&a, &tilde, order),
        egf_fixed_point_check(&a, order),
        egf_brenti_check(&a, 1, order)?,
        egf_brenti_check(&a, 2, order)?,
        egf_closed_form_check(&a, 1, order),
        egf_closed_form_check(&a, 2, order),
    ])
}

/// `(-1)^n (1 + x + ... + x^n)`.
pub fn specialization_first(n: usize) -> IntPoly {
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    IntPoly::from_i64s(&vec![sign; n + 1])
}

/// `Σ_k x^{n-k} Σ_{i=k}^n (-1)^{i-1} 2^{n-i} C(n,i)`.
pub fn specialization_second(n: usize) -> IntPoly {
    let row = binomial_row(n);
    let mut coeffs = vec![BigInt::from(0); n + 1];
    for k in 0..=n {
        let inner: BigInt = (k..=n)
            .map(|i| {
                let t = pow2(n - i) * &row[i];
                if i % 2 == 1 {
                    t
                } else {
                    -t
                }
            })
            .sum();
        coeffs[n - k] = inner;
    }
    IntPoly::from_coeffs(coeffs)
}

fn specialize(poly: &MultiPoly, y: i64, q: i64, p: i64) -> IntPoly {
    poly.substitute(Var::Y, &BigInt::from(y))
        .substitute(Var::Q, &BigInt::from(q))
        .substitute(Var::P, &BigInt::from(p))
        .to_univariate(Var::X)
        .expect("only x remains")
}

/// Both signed specializations of `Ã_n(x,y,q,p)` against their closed
/// forms, for the supplied `Ã_0..Ã_{n_max}`.
pub fn specialization_checks_from(tilde: &[MultiPoly]) -> Vec<IdentityCheck> {
    let bound = tilde.len().saturating_sub(1);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (n, t) in tilde.iter().enumerate() {
        diff_int_polys(
            n,
            &specialize(t, 1, -1, -1),
            &specialization_first(n),
            &mut first,
        );
        diff_int_polys(
            n,
            &specialize(t, 1, -1, 1),
            &specialization_second(n),
            &mut second,
        );
    }
    vec![
        IdentityCheck::new(
            "tildeA_n(x,1,-1,-1) = (-1)^n (1 + x + ... + x^n)",
            bound,
            first,
        ),
        IdentityCheck::new(
            "tildeA_n(x,1,-1,1) = sum_k x^{n-k} sum_{i>=k} (-1)^{i-1} 2^{n-i} C(n,i)",
            bound,
            second,
        ),
    ]
}

pub fn specialization_checks(n_max: usize, limit: EnumLimit) -> Result<Vec<IdentityCheck>> {
    Ok(specialization_checks_from(&tilde_a_xyqp_enum_all(
        n_max, limit,
    )?))
}

/// Equality of the block statistics over `Q_n` and the
/// cycle statistics over `Q̂_n`, for `1 <= n <= n_max`.
pub fn block_cycle_check(n_max: usize, limit: EnumLimit) -> Result<IdentityCheck> {
    limit.check(n_max)?;
    let mut mismatches = Vec::new();
    for n in 1..=n_max {
        let lhs = blockstat_enum(n, limit)?.poly;
        let rhs = tilde_a_xyqp_enum(n - 1, limit)?.poly;
        crate::report::diff_multi_polys(n, &lhs, &rhs, &mut mismatches);
    }
    Ok(IdentityCheck::new(
        "sum_{Q_n} x^asc y^bkone q^bk p^fbk = sum_{Qhat_n} x^exc y^fix q^cyc p^fcyc",
        n_max,
        mismatches,
    ))
}

/// Recurrence route against the enumeration route for `n <= n_max`.
pub fn recurrence_check(n_max: usize, limit: EnumLimit) -> Result<IdentityCheck> {
    let a = a_xyq_enum_all(n_max, limit)?;
    let tilde = tilde_a_xyqp_enum_all(n_max, limit)?;
    let mut mismatches = Vec::new();
    for (n, want) in tilde.iter().enumerate() {
        let rec = tilde_a_xyqp_rec(n, &a)?.poly;
        crate::report::diff_multi_polys(n, &rec, want, &mut mismatches);
    }
    Ok(IdentityCheck::new(
        "tildeA_n(x,y,q,p) = ypq A_n + sum_k C(n,k) x^k q p^{k+1} A_{n-k}",
        n_max,
        mismatches,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulerian::{binomial_eulerian_threeterm_polys, eulerian_poly};
    use crate::perm::enumerate_qhat;
    use crate::report::all_passed;

    fn lim() -> EnumLimit {
        EnumLimit::default()
    }

    fn m(terms: &[(i64, Exponents)]) -> MultiPoly {
        MultiPoly::from_terms(terms.iter().map(|&(c, e)| (e, BigInt::from(c))))
    }

    #[test]
    fn small_a_xyq() {
        assert_eq!(a_xyq_enum(0, lim()).unwrap().poly, MultiPoly::one());
        assert_eq!(a_xyq_enum(1, lim()).unwrap().poly, m(&[(1, [0, 1, 1, 0])]));
        assert_eq!(
            a_xyq_enum(2, lim()).unwrap().poly,
            m(&[(1, [0, 2, 2, 0]), (1, [1, 0, 1, 0])])
        );
        // exc is Eulerian distributed
        for n in 1..=7 {
            let a = a_xyq_enum(n, lim()).unwrap().poly;
            let t = a
                .substitute(Var::Y, &BigInt::one())
                .substitute(Var::Q, &BigInt::one());
            assert_eq!(t.to_univariate(Var::X).unwrap(), eulerian_poly(n));
        }
    }

    #[test]
    fn listed_tilde_polys() {
        let t0 = m(&[(1, [0, 1, 1, 1])]);
        let t1 = m(&[(1, [0, 2, 2, 1]), (1, [1, 0, 1, 2])]);
        let t2 = m(&[
            (1, [0, 3, 3, 1]),
            (1, [1, 1, 2, 1]),
            (2, [1, 1, 2, 2]),
            (1, [2, 0, 1, 3]),
        ]);
        let a = a_xyq_enum_all(2, lim()).unwrap();
        for (n, want) in [t0, t1, t2].iter().enumerate() {
            assert_eq!(
                &tilde_a_xyqp_enum(n, lim()).unwrap().poly,
                want,
                "enum n={n}"
            );
            assert_eq!(&tilde_a_xyqp_rec(n, &a).unwrap().poly, want, "rec n={n}");
        }
        assert!(tilde_a_xyqp_rec(3, &a).is_err());
    }

    #[test]
    fn statistics_oracle_on_qhat() {
        // Independent oracle: read the statistics off the cycle form itself.
        for n in 0..=5 {
            let mut want = MultiPoly::default();
            for form in enumerate_qhat(n + 1, lim()).unwrap() {
                let mut exc = 0;
                let mut fix = 0;
                for c in form.cycles() {
                    if c.len() == 1 {
                        fix += 1;
                    }
                    // inside a cycle written (c_1 ... c_r), c_i maps to c_{i+1}
                    for i in 0..c.len() {
                        if c[(i + 1) % c.len()] > c[i] {
                            exc += 1;
                        }
                    }
                }
                let e = [
                    exc,
                    fix,
                    form.cycles().len() as u32,
                    form.cycles()[0].len() as u32,
                ];
                want = want + MultiPoly::monomial(1, e);
            }
            assert_eq!(tilde_a_xyqp_enum(n, lim()).unwrap().poly, want, "n={n}");
        }
    }

    #[test]
    fn tilde_collapses_to_binomial_eulerian() {
        let expected = binomial_eulerian_threeterm_polys(7);
        let ones = [1i64, 1, 1, 1].map(BigInt::from);
        for (n, want) in expected.iter().enumerate() {
            let t = tilde_a_xyqp_enum(n, lim()).unwrap().poly;
            let u = t
                .substitute(Var::Y, &BigInt::one())
                .substitute(Var::Q, &BigInt::one())
                .substitute(Var::P, &BigInt::one());
            assert_eq!(&u.to_univariate(Var::X).unwrap(), want);
            assert_eq!(t.evaluate(&ones), want.evaluate(&BigInt::one()));
            assert!(t.degree_in(Var::X).unwrap() as usize <= n);
        }
    }

    #[test]
    fn blockstat_small() {
        assert_eq!(
            blockstat_enum(1, lim()).unwrap().poly,
            m(&[(1, [0, 1, 1, 1])])
        );
        assert_eq!(
            blockstat_enum(3, lim()).unwrap().poly,
            tilde_a_xyqp_enum(2, lim()).unwrap().poly
        );
        assert!(block_cycle_check(7, lim()).unwrap().passed);
    }

    #[test]
    fn recurrence_matches_enumeration() {
        assert!(recurrence_check(6, lim()).unwrap().passed);
    }

    #[test]
    fn generating_functions() {
        let checks = egf_multistat_checks(6, lim()).unwrap();
        assert!(all_passed(&checks), "{checks:#?}");
        // A wrong A-series is caught.
        let mut a = a_xyq_enum_all(4, lim()).unwrap();
        let tilde = tilde_a_xyqp_enum_all(4, lim()).unwrap();
        a[3] = a[3].clone() + MultiPoly::one();
        assert!(!egf_tilde_multistat_check(&a, &tilde, 4).passed);
        assert!(!egf_brenti_check(&a, 1, 4).unwrap().passed);
    }

    #[test]
    fn specializations() {
        assert_eq!(specialization_first(1), IntPoly::from_i64s(&[-1, -1]));
        assert_eq!(specialization_second(0), IntPoly::from_i64s(&[-1]));
        let checks = specialization_checks(6, lim()).unwrap();
        assert!(all_passed(&checks), "{checks:#?}");
    }
}
