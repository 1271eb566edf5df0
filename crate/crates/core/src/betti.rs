//! Betti numbers `B(n,k)`, the cycle polynomial `T_n(q)` of `Q̂_{n+1}`,
//! signless Stirling numbers of the first kind and Charlier polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combin::{binomial, binomial_row, pow2};
use crate::error::{Error, Result};
use crate::limits::EnumLimit;
use crate::multistat::specialization_second;
use crate::perm::{par_fold_qhat, qhat_cycle_counts};
use crate::poly::{IntPoly, TruncatedSeries};
use crate::report::{compare_series, decimal_vec, diff_int_polys, diff_ints, IdentityCheck};

/// `B(n,k) = Σ_{i=k}^n (-1)^{k-i} 2^{n-i} C(n,i)`.
pub fn betti(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::Domain(format!("B({n},{k}) needs k <= n")));
    }
    let row = binomial_row(n);
    Ok((k..=n)
        .map(|i| {
            let t = pow2(n - i) * &row[i];
            if (i - k).is_multiple_of(2) {
                t
            } else {
                -t
            }
        })
        .sum())
}

/// `B_n(x) = Σ_k B(n,k) x^k`.
pub fn betti_poly(n: usize) -> IntPoly {
    IntPoly::from_coeffs((0..=n).map(|k| betti(n, k).unwrap()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTriangle {
    #[serde(serialize_with = "serialize_rows")]
    rows: Vec<Vec<BigInt>>,
}

fn serialize_rows<S: serde::Serializer>(
    rows: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    )
}

impl BettiTriangle {
    pub fn build(n_max: usize) -> Self {
        Self {
            rows: (0..=n_max)
                .map(|n| betti_poly(n).coeffs().to_vec())
                .collect(),
        }
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn all_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(|v| !v.is_negative())
    }
}

/// Signed sums over `Q̂_{n+1}` gathered in one pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedCounts {
    pub n: usize,
    /// `Σ_{exc = n-k} (-1)^{cyc + aexc}` for `k = 0..=n`.
    #[serde(serialize_with = "decimal_vec")]
    pub betti: Vec<BigInt>,
    /// `Σ x^exc (-1)^cyc`.
    pub exc_poly: IntPoly,
}

pub fn betti_signed_enum(n: usize, limit: EnumLimit) -> Result<SignedCounts> {
    let (by_k, by_exc) = par_fold_qhat(
        n + 1,
        limit,
        || (vec![0i64; n + 1], vec![0i64; n + 1]),
        |(by_k, by_exc), p| {
            let (exc, cyc, aexc) = (p.exc(), p.cyc(), p.aexc());
            let sign_cyc = if cyc % 2 == 0 { 1 } else { -1 };
            by_exc[exc] += sign_cyc;
            let k = n - exc;
            by_k[k] += if (cyc + aexc) % 2 == 0 { 1 } else { -1 };
        },
        |(mut a, mut b), (c, d)| {
            a.iter_mut().zip(c).for_each(|(x, y)| *x += y);
            b.iter_mut().zip(d).for_each(|(x, y)| *x += y);
            (a, b)
        },
    )?;
    Ok(SignedCounts {
        n,
        betti: by_k.into_iter().map(BigInt::from).collect(),
        exc_poly: IntPoly::from_coeffs(by_exc.into_iter().map(BigInt::from).collect()),
    })
}

/// `Σ_k (-1)^{k+1} B(n,k) x^{n-k}`.
pub fn signed_betti_exc_poly(n: usize) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for k in 0..=n {
        let b = betti(n, k).unwrap();
        coeffs[n - k] = if k % 2 == 1 { b } else { -b };
    }
    IntPoly::from_coeffs(coeffs)
}

/// `(1+x) B_n(x) = 1 + x(2+x)^n` for `n <= n_max`.
pub fn betti_poly_identity(n_max: usize) -> IdentityCheck {
    let mut mismatches = Vec::new();
    let two_plus_x = IntPoly::linear(2);
    for n in 0..=n_max {
        let lhs = IntPoly::linear(1) * betti_poly(n);
        let rhs = IntPoly::one() + two_plus_x.pow(n).shift(1);
        diff_int_polys(n, &lhs, &rhs, &mut mismatches);
    }
    IdentityCheck::new("(1+x) B_n(x) = 1 + x(2+x)^n", n_max, mismatches)
}

/// `(1+x) Σ B_n(x) z^n/n! = e^z + x e^{(2+x)z}` to order `N`.
pub fn egf_betti_check(order: usize) -> IdentityCheck {
    let b = TruncatedSeries::from_fn(order, betti_poly);
    let lhs = b.scale(&IntPoly::linear(1));
    let rhs = TruncatedSeries::exp(&IntPoly::one(), order)
        .add(&TruncatedSeries::exp(&IntPoly::linear(2), order).scale(&IntPoly::x()));
    compare_series("(1+x) B(x,z) = e^z + x e^{(2+x)z}", &lhs, &rhs)
}

/// Signed enumerations against the closed forms for `n <= n_max`: the
/// combinatorial Betti formula, the signed exc polynomial, and agreement
/// of the two ways of writing its coefficients.
pub fn betti_enum_checks(n_max: usize, limit: EnumLimit) -> Result<Vec<IdentityCheck>> {
    limit.check(n_max + 1)?;
    let mut by_k = Vec::new();
    let mut by_exc = Vec::new();
    let mut signs = Vec::new();
    for n in 0..=n_max {
        let s = betti_signed_enum(n, limit)?;
        for k in 0..=n {
            diff_ints(n, &format!("k={k}"), &s.betti[k], &betti(n, k)?, &mut by_k);
        }
        let closed = signed_betti_exc_poly(n);
        diff_int_polys(n, &s.exc_poly, &closed, &mut by_exc);
        diff_int_polys(n, &specialization_second(n), &closed, &mut signs);
    }
    Ok(vec![
        IdentityCheck::new(
            "B(n,k) = sum_{exc = n-k} (-1)^{cyc + aexc} over Qhat_{n+1}",
            n_max,
            by_k,
        ),
        IdentityCheck::new(
            "sum_{Qhat_{n+1}} x^exc (-1)^cyc = sum_k (-1)^{k+1} B(n,k) x^{n-k}",
            n_max,
            by_exc,
        ),
        IdentityCheck::new(
            "sum_{i>=k} (-1)^{i-1} 2^{n-i} C(n,i) = (-1)^{k+1} B(n,k)",
            n_max,
            signs,
        ),
    ])
}

/// Signless Stirling numbers of the first kind, rows `0..=n_max`.
pub fn stirling1_table(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &t[n - 1];
        let row = (0..=n)
            .map(|k| {
                let a = if k >= 1 {
                    prev.get(k - 1).cloned().unwrap_or_default()
                } else {
                    BigInt::zero()
                };
                a + prev.get(k).map(|v| v * (n - 1)).unwrap_or_default()
            })
            .collect();
        t.push(row);
    }
    t
}

/// Permutations of `[n]` with `k` cycles.
pub fn stirling1_signless(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling1_table(n)[n][k].clone()
}

/// `F_n(q) = Σ_k c(n,k) q^k = q(q+1)...(q+n-1)`.
pub fn rising_factorial_poly(n: usize) -> IntPoly {
    IntPoly::from_coeffs(stirling1_table(n).pop().unwrap())
}

/// `C_n^{(a)}(x) = Σ_k (-a)^{n-k} C(n,k) x(x-1)...(x-k+1)`.
pub fn charlier(n: usize, a: i64) -> Result<IntPoly> {
    if a == 0 {
        return Err(Error::Domain("Charlier polynomials need a != 0".into()));
    }
    let falling = TruncatedSeries::<IntPoly>::binomial_pow(n);
    let minus_a = BigInt::from(-a);
    Ok((0..=n).fold(IntPoly::zero(), |acc, k| {
        let c = num_traits::pow(minus_a.clone(), n - k) * binomial(n, k);
        acc + falling.coeff(k).scalar_mul(&c)
    }))
}

/// `e^{-az}(1+z)^x = Σ C_n^{(a)}(x) z^n/n!` to order `N`.
pub fn charlier_generating_check(a: i64, order: usize) -> Result<IdentityCheck> {
    let lhs = TruncatedSeries::exp(&IntPoly::constant(-a), order)
        .mul(&TruncatedSeries::binomial_pow(order));
    let rhs = TruncatedSeries::new(
        (0..=order).map(|n| charlier(n, a)).collect::<Result<_>>()?,
        order,
    );
    Ok(compare_series(
        &format!("e^{{-{a}z}}(1+z)^x = sum C_n^({a})(x) z^n/n!"),
        &lhs,
        &rhs,
    ))
}

/// Ways to compute `T_n(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TRoute {
    /// Cycle counts over `Q̂_{n+1}`.
    Enum,
    /// `T_{n+1} = (n+1+q)T_n - nT_{n-1}` from `T_0 = q`, `T_1 = q + q^2`.
    Recurrence,
    /// `(-1)^n q C_n^{(1)}(-q)`.
    Charlier,
    /// `q Σ_k C(n,k) F_k(q)`, the coefficients of `q e^z (1-z)^{-q}`.
    Egf,
}

impl TRoute {
    pub const ALL: [TRoute; 4] = [
        TRoute::Enum,
        TRoute::Recurrence,
        TRoute::Charlier,
        TRoute::Egf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TRoute::Enum => "enum",
            TRoute::Recurrence => "recurrence",
            TRoute::Charlier => "charlier",
            TRoute::Egf => "egf",
        }
    }
}

pub fn t_recurrence_polys(n_max: usize) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::x(), IntPoly::from_i64s(&[0, 1, 1])];
    for n in 1..n_max {
        let next =
            IntPoly::linear(n as i64 + 1) * &out[n] - out[n - 1].scalar_mul(&BigInt::from(n));
        out.push(next);
    }
    out.truncate(n_max + 1);
    out
}

/// Cycle counts over `Q̂_{n+1}`, every member visited.
pub fn t_enum(n: usize, limit: EnumLimit) -> Result<IntPoly> {
    let counts = qhat_cycle_counts(n + 1, limit)?;
    Ok(IntPoly::from_coeffs(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

pub fn t_charlier(n: usize) -> IntPoly {
    let c = charlier(n, 1)
        .expect("a = 1")
        .compose(&IntPoly::from_i64s(&[0, -1]));
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    c.shift(1).scalar_mul(&BigInt::from(sign))
}

pub fn t_egf(n: usize) -> IntPoly {
    let row = binomial_row(n);
    let series = TruncatedSeries::<IntPoly>::pochhammer_pow(n);
    (0..=n)
        .fold(IntPoly::zero(), |acc, k| {
            acc + series.coeff(k).scalar_mul(&row[k])
        })
        .shift(1)
}

pub fn t_poly(n: usize, route: TRoute, limit: EnumLimit) -> Result<IntPoly> {
    Ok(match route {
        TRoute::Enum => t_enum(n, limit)?,
        TRoute::Recurrence => t_recurrence_polys(n).pop().unwrap(),
        TRoute::Charlier => t_charlier(n),
        TRoute::Egf => t_egf(n),
    })
}

/// `T(n,k)` from `T(n+1,k) = (n+1)T(n,k) + T(n,k-1) - nT(n-1,k)`.
pub fn t_table(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(), BigInt::one()]];
    if n_max >= 1 {
        rows.push(vec![BigInt::zero(), BigInt::one(), BigInt::one()]);
    }
    for n in 1..n_max {
        let cell = |m: usize, k: isize| -> BigInt {
            if k < 0 {
                return BigInt::zero();
            }
            rows[m].get(k as usize).cloned().unwrap_or_default()
        };
        let row = (0..=n + 2)
            .map(|k| {
                let ki = k as isize;
                cell(n, ki) * (n + 1) + cell(n, ki - 1) - cell(n - 1, ki) * n
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `q e^z (1-z)^{-q} = Σ T_n(q) z^n/n!` against the supplied `T_0..T_N`.
pub fn egf_t_check(t: &[IntPoly]) -> IdentityCheck {
    let order = t.len().saturating_sub(1);
    let rhs = TruncatedSeries::exp(&IntPoly::one(), order)
        .mul(&TruncatedSeries::pochhammer_pow(order))
        .scale(&IntPoly::x());
    compare_series(
        "T(q,z) = q e^z / (1-z)^q",
        &TruncatedSeries::new(t.to_vec(), order),
        &rhs,
    )
}

/// `T_n` on every route at one `n`, and which routes disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TComparison {
    pub n: usize,
    /// `(route, coefficients in q)`; the enum route is omitted above the
    /// enumeration limit.
    pub values: Vec<(TRoute, Vec<String>)>,
    pub disagreeing_pairs: Vec<(TRoute, TRoute)>,
    pub routes_agree: bool,
}

pub fn t_comparison(n: usize, limit: EnumLimit) -> Result<TComparison> {
    let mut values = Vec::new();
    for route in TRoute::ALL {
        match t_poly(n, route, limit) {
            Ok(p) => values.push((route, p)),
            Err(Error::LimitExceeded { .. }) if route == TRoute::Enum => {}
            Err(e) => return Err(e),
        }
    }
    let mut disagreeing_pairs = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i].1 != values[j].1 {
                disagreeing_pairs.push((values[i].0, values[j].0));
            }
        }
    }
    Ok(TComparison {
        n,
        routes_agree: disagreeing_pairs.is_empty(),
        disagreeing_pairs,
        values: values
            .into_iter()
            .map(|(r, p)| (r, p.to_decimal_strings()))
            .collect(),
    })
}

/// The `T_2` cell examined on its own: every route, plus the value the
/// recurrence gives when its multiplier is shifted to `(n+2+q)` (and the
/// subtracted term to `(n+1)T_{n-1}`), which is the only way to reach
/// `q + 4q^2 + q^3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct T2Finding {
    pub comparison: TComparison,
    pub shifted_recurrence_value: Vec<String>,
    pub shifted_recurrence_matches_any_route: bool,
    pub summary: String,
}

pub fn t2_finding(limit: EnumLimit) -> Result<T2Finding> {
    let comparison = t_comparison(2, limit)?;
    let t0 = IntPoly::x();
    let t1 = IntPoly::from_i64s(&[0, 1, 1]);
    let shifted = IntPoly::linear(3) * &t1 - t0.scalar_mul(&BigInt::from(2));
    let shifted_strings = shifted.to_decimal_strings();
    let matches = comparison.values.iter().any(|(_, v)| *v == shifted_strings);
    let summary = if comparison.routes_agree {
        format!(
            "all routes give T_2 = {}; the shifted recurrence gives {} and is refuted",
            t_recurrence_polys(2)[2],
            shifted
        )
    } else {
        format!("routes disagree at T_2: {:?}", comparison.disagreeing_pairs)
    };
    Ok(T2Finding {
        comparison,
        shifted_recurrence_value: shifted_strings,
        shifted_recurrence_matches_any_route: matches,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_qhat;
    use crate::report::all_passed;

    fn lim() -> EnumLimit {
        EnumLimit::default()
    }

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn betti_values() {
        assert_eq!(betti_poly(2), ip(&[1, 3, 1]));
        assert!(betti(2, 3).is_err());
        for n in 0..=15 {
            assert_eq!(betti(n, n).unwrap(), BigInt::one());
        }
        assert!(BettiTriangle::build(25).all_nonnegative());
        assert_eq!(BettiTriangle::build(3).get(3, 1), betti(3, 1).unwrap());
        assert!(betti_poly_identity(20).passed);
        assert!(egf_betti_check(10).passed);
    }

    #[test]
    fn betti_signed_small() {
        let s = betti_signed_enum(2, lim()).unwrap();
        assert_eq!(
            s.betti,
            vec![1, 3, 1]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
        let s0 = betti_signed_enum(0, lim()).unwrap();
        assert_eq!(s0.betti, vec![BigInt::one()]);
        assert!(all_passed(&betti_enum_checks(7, lim()).unwrap()));
    }

    #[test]
    fn stirling1_values() {
        assert_eq!(
            stirling1_table(3)[3],
            vec![0, 2, 3, 1]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
        // Oracle: cycle counts over S_n.
        for n in 1..=7 {
            let mut counts = vec![0i64; n + 1];
            for p in crate::perm::enumerate_sym(n, lim()).unwrap() {
                counts[p.cyc()] += 1;
            }
            assert_eq!(rising_factorial_poly(n), ip(&counts));
            assert_eq!(stirling1_signless(n, n), BigInt::one());
            assert_eq!(
                rising_factorial_poly(n),
                IntPoly::linear(n as i64 - 1) * rising_factorial_poly(n - 1)
            );
        }
        assert_eq!(stirling1_signless(2, 3), BigInt::zero());
    }

    #[test]
    fn charlier_small() {
        assert!(charlier(3, 0).is_err());
        assert_eq!(charlier(0, 2).unwrap(), IntPoly::one());
        assert_eq!(charlier(1, 2).unwrap(), ip(&[-2, 1]));
        assert_eq!(charlier(1, -3).unwrap(), ip(&[3, 1]));
        for a in [-2, 1, 3] {
            assert!(charlier_generating_check(a, 10).unwrap().passed);
        }
        for n in 0..=10 {
            let c = charlier(n, 1).unwrap();
            assert_eq!(c.degree(), Some(n));
            assert_eq!(c.leading(), Some(&BigInt::one()));
        }
    }

    #[test]
    fn t_family_small() {
        assert_eq!(t_recurrence_polys(1), vec![ip(&[0, 1]), ip(&[0, 1, 1])]);
        assert_eq!(t_recurrence_polys(0), vec![ip(&[0, 1])]);
        // Oracle: Q̂_3 listed by hand has cycle counts 3, 2, 2, 2, 1.
        let cycs: Vec<usize> = enumerate_qhat(3, lim())
            .unwrap()
            .map(|f| f.cycles().len())
            .collect();
        let mut sorted = cycs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 2, 2, 3]);
        for route in TRoute::ALL {
            assert_eq!(
                t_poly(2, route, lim()).unwrap(),
                ip(&[0, 1, 3, 1]),
                "{}",
                route.name()
            );
            assert_eq!(t_poly(3, route, lim()).unwrap(), ip(&[0, 1, 8, 6, 1]));
        }
        let table = t_table(12);
        for (n, row) in table.iter().enumerate().take(9) {
            let t = t_poly(n, TRoute::Enum, lim()).unwrap();
            assert_eq!(IntPoly::from_coeffs(row.clone()), t);
            if n >= 2 {
                assert_eq!(t.evaluate(&BigInt::from(-1)), BigInt::from(n as i64 - 1));
            }
        }
        assert!(egf_t_check(&t_recurrence_polys(10)).passed);
    }

    #[test]
    fn t2_is_reported() {
        let f = t2_finding(lim()).unwrap();
        assert!(f.comparison.routes_agree);
        assert_eq!(f.shifted_recurrence_value, vec!["0", "1", "4", "1"]);
        assert!(!f.shifted_recurrence_matches_any_route);
        assert_eq!(f.comparison.values.len(), 4);
        let c = t_comparison(10, lim()).unwrap();
        assert_eq!(c.values.len(), 3);
        assert!(c.routes_agree);
    }
}
