//! Eulerian and binomial-Eulerian polynomials by every available route,
//! the chain numbers `a_n = Ã_n(2)`, and the generating-function identities
//! tying them together.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combin::{binomial, binomial_row, factorial, pow2};
use crate::error::{Error, Result};
use crate::limits::EnumLimit;
use crate::perm::{par_fold_sym, Permutation};
use crate::poly::{IntPoly, TruncatedSeries};
use crate::report::{
    compare_series, decimal_vec, diff_int_polys, diff_ints, IdentityCheck, Mismatch,
};

/// `A_0..A_{n_max}` via `A_{n+1} = (1+nx)A_n + x(1-x)A_n'`.
pub fn eulerian_polys(n_max: usize) -> Vec<IntPoly> {
    let x_one_minus_x = IntPoly::from_i64s(&[0, 1, -1]);
    let mut out = vec![IntPoly::one()];
    for n in 0..n_max {
        let a = &out[n];
        let next = IntPoly::from_i64s(&[1, n as i64]) * a + &x_one_minus_x * a.derivative();
        out.push(next);
    }
    out
}

pub fn eulerian_poly(n: usize) -> IntPoly {
    eulerian_polys(n).pop().unwrap()
}

/// `A_n = Σ_{k<n} C(n,k)(x-1)^{n-k-1} A_k`, starting from `A_0 = 1`.
pub fn eulerian_polys_euler_route(n_max: usize) -> Vec<IntPoly> {
    let x_minus_one = IntPoly::linear(-1);
    let mut out = vec![IntPoly::one()];
    for n in 1..=n_max {
        let row = binomial_row(n);
        let next = (0..n).fold(IntPoly::zero(), |acc, k| {
            acc + x_minus_one.pow(n - k - 1).scalar_mul(&row[k]) * &out[k]
        });
        out.push(next);
    }
    out
}

pub fn eulerian_poly_euler_route(n: usize) -> IntPoly {
    eulerian_polys_euler_route(n).pop().unwrap()
}

/// Triangle of Eulerian numbers `⟨n,k⟩` with the convention `⟨0,0⟩ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianTable {
    rows: Vec<Vec<BigInt>>,
}

impl EulerianTable {
    /// `⟨n,k⟩ = (k+1)⟨n-1,k⟩ + (n-k)⟨n-1,k-1⟩` from `⟨1,0⟩ = 1`.
    pub fn build(n_max: usize) -> Self {
        let mut rows = vec![vec![BigInt::zero()]];
        if n_max >= 1 {
            rows.push(vec![BigInt::one()]);
        }
        for n in 2..=n_max {
            let prev = &rows[n - 1];
            let get = |k: isize| -> BigInt {
                if k < 0 {
                    BigInt::zero()
                } else {
                    prev.get(k as usize).cloned().unwrap_or_default()
                }
            };
            let row = (0..n)
                .map(|k| get(k as isize) * (k + 1) + get(k as isize - 1) * (n - k))
                .collect();
            rows.push(row);
        }
        Self { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `⟨n,k⟩`, zero outside the triangle.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

/// Both sides of `Σ_k C(a+b,k)⟨k,a-1⟩ = Σ_k C(a+b,k)⟨k,b-1⟩`.
pub fn symmetric_identity_sides(
    a: usize,
    b: usize,
    table: &EulerianTable,
) -> Result<(BigInt, BigInt)> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("a and b must be positive".into()));
    }
    let m = a + b;
    if table.n_max() < m {
        return Err(Error::Domain(format!(
            "Eulerian table too small for a+b={m}"
        )));
    }
    let row = binomial_row(m);
    let side = |c: usize| {
        (0..=m)
            .map(|k| &row[k] * table.get(k, c - 1))
            .sum::<BigInt>()
    };
    Ok((side(a), side(b)))
}

pub fn symmetric_identity_check(a: usize, b: usize, table: &EulerianTable) -> Result<bool> {
    let (l, r) = symmetric_identity_sides(a, b, table)?;
    Ok(l == r)
}

/// `Ã_n(x) = 1 + x Σ_{k=1}^n C(n,k) A_k(x)`.
pub fn binomial_eulerian_def(n: usize) -> IntPoly {
    binomial_eulerian_def_from(n, &eulerian_polys(n))
}

fn binomial_eulerian_def_from(n: usize, eulerian: &[IntPoly]) -> IntPoly {
    let row = binomial_row(n);
    let sum = (1..=n).fold(IntPoly::zero(), |acc, k| {
        acc + eulerian[k].scalar_mul(&row[k])
    });
    IntPoly::one() + sum.shift(1)
}

pub fn binomial_eulerian_defs(n_max: usize) -> Vec<IntPoly> {
    let eulerian = eulerian_polys(n_max);
    (0..=n_max)
        .map(|n| binomial_eulerian_def_from(n, &eulerian))
        .collect()
}

/// Triangle `Ã(n,k)` built from the three-term mixed recurrence
/// `Ã(n+1,k) = (k+1)Ã(n,k) + (n-k+2)Ã(n,k-1) - nÃ(n-1,k-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialEulerianTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialEulerianTable {
    pub fn build(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 0..n_max {
            let cell = |m: isize, k: isize, rows: &Vec<Vec<BigInt>>| -> BigInt {
                if m < 0 || k < 0 {
                    return BigInt::zero();
                }
                rows[m as usize]
                    .get(k as usize)
                    .cloned()
                    .unwrap_or_default()
            };
            let ni = n as isize;
            let row = (0..=n + 1)
                .map(|k| {
                    let ki = k as isize;
                    cell(ni, ki, &rows) * (k + 1) + cell(ni, ki - 1, &rows) * (ni - ki + 2)
                        - cell(ni - 1, ki - 1, &rows) * n
                })
                .collect();
            rows.push(row);
        }
        Self { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `Ã(n,k)`, zero outside `0 <= k <= n`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Like [`get`](Self::get) but accepting the negative indices the
    /// recurrences produce at the boundary.
    pub fn get_signed(&self, n: isize, k: isize) -> BigInt {
        if n < 0 || k < 0 {
            BigInt::zero()
        } else {
            self.get(n as usize, k as usize)
        }
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn row_poly(&self, n: usize) -> IntPoly {
        IntPoly::from_coeffs(self.rows[n].clone())
    }
}

/// `Ã_0..Ã_{n_max}` via
/// `Ã_{n+1} = (1+(n+1)x)Ã_n + x(1-x)Ã_n' - nxÃ_{n-1}`.
pub fn binomial_eulerian_threeterm_polys(n_max: usize) -> Vec<IntPoly> {
    let x_one_minus_x = IntPoly::from_i64s(&[0, 1, -1]);
    let mut out = vec![IntPoly::one()];
    for n in 0..n_max {
        let a = &out[n];
        let mut next = IntPoly::from_i64s(&[1, n as i64 + 1]) * a + &x_one_minus_x * a.derivative();
        if n >= 1 {
            next = next - out[n - 1].shift(1).scalar_mul(&BigInt::from(n));
        }
        out.push(next);
    }
    out
}

pub fn binomial_eulerian_threeterm_poly(n: usize) -> IntPoly {
    binomial_eulerian_threeterm_polys(n).pop().unwrap()
}

/// `Ã_n = Σ_{j=1}^n C(n,j)(x-1)^{j-1} Ã_{n-j} + x^n`.
pub fn binomial_eulerian_nth_order_polys(n_max: usize) -> Vec<IntPoly> {
    let x_minus_one = IntPoly::linear(-1);
    let mut out = vec![IntPoly::one()];
    for n in 1..=n_max {
        let row = binomial_row(n);
        let sum = (1..=n).fold(IntPoly::zero(), |acc, j| {
            acc + x_minus_one.pow(j - 1).scalar_mul(&row[j]) * &out[n - j]
        });
        out.push(sum + IntPoly::monomial(1, n));
    }
    out
}

pub fn binomial_eulerian_nth_order(n: usize) -> IntPoly {
    binomial_eulerian_nth_order_polys(n).pop().unwrap()
}

/// The reindexed form `Ã_n = Σ_{k=0}^{n-1} C(n,k)(x-1)^{n-k-1} Ã_k + x^n`.
pub fn binomial_eulerian_nth_order_reindexed_polys(n_max: usize) -> Vec<IntPoly> {
    let x_minus_one = IntPoly::linear(-1);
    let mut out = vec![IntPoly::one()];
    for n in 1..=n_max {
        let row = binomial_row(n);
        let sum = (0..n).fold(IntPoly::zero(), |acc, k| {
            acc + x_minus_one.pow(n - k - 1).scalar_mul(&row[k]) * &out[k]
        });
        out.push(sum + IntPoly::monomial(1, n));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Des,
    Asc,
}

/// Counts `π ∈ Q_{n+1}` by descents or ascents.
pub fn binomial_eulerian_enum(n: usize, stat: Statistic, limit: EnumLimit) -> Result<IntPoly> {
    let counts = par_fold_sym(
        n + 1,
        limit,
        || vec![0u64; n + 1],
        |acc, p: &Permutation| {
            if p.is_in_q() {
                let k = match stat {
                    Statistic::Des => p.des(),
                    Statistic::Asc => p.asc(),
                };
                acc[k] += 1;
            }
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )?;
    Ok(IntPoly::from_coeffs(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// Ways to compute `Ã_n(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Def,
    Table,
    ThreeTerm,
    NthOrder,
    Enum,
}

impl Route {
    pub const CLOSED: [Route; 4] = [Route::Def, Route::Table, Route::ThreeTerm, Route::NthOrder];

    pub fn name(self) -> &'static str {
        match self {
            Route::Def => "def",
            Route::Table => "table",
            Route::ThreeTerm => "three-term",
            Route::NthOrder => "nth-order",
            Route::Enum => "enum",
        }
    }
}

/// `Ã_0..Ã_{n_max}` by one route. The enumeration route enumerates
/// `Q_{n+1}` and is subject to `limit`.
pub fn binomial_eulerian_polys(
    n_max: usize,
    route: Route,
    limit: EnumLimit,
) -> Result<Vec<IntPoly>> {
    Ok(match route {
        Route::Def => binomial_eulerian_defs(n_max),
        Route::Table => {
            let t = BinomialEulerianTable::build(n_max);
            (0..=n_max).map(|n| t.row_poly(n)).collect()
        }
        Route::ThreeTerm => binomial_eulerian_threeterm_polys(n_max),
        Route::NthOrder => binomial_eulerian_nth_order_polys(n_max),
        Route::Enum => {
            limit.check(n_max + 1)?;
            (0..=n_max)
                .map(|n| binomial_eulerian_enum(n, Statistic::Des, limit))
                .collect::<Result<_>>()?
        }
    })
}

pub fn binomial_eulerian(n: usize, route: Route, limit: EnumLimit) -> Result<IntPoly> {
    Ok(match route {
        Route::Enum => binomial_eulerian_enum(n, Statistic::Des, limit)?,
        _ => binomial_eulerian_polys(n, route, limit)?.pop().unwrap(),
    })
}

/// Stirling numbers of the second kind, rows `0..=n_max`.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &t[n - 1];
        let row = (0..=n)
            .map(|k| {
                let stay = prev.get(k).map(|v| v * k).unwrap_or_default();
                let new_block = if k >= 1 {
                    prev.get(k - 1).cloned().unwrap_or_default()
                } else {
                    BigInt::zero()
                };
                stay + new_block
            })
            .collect();
        t.push(row);
    }
    t
}

/// `S(n,k)`: partitions of `[n]` into `k` nonempty blocks.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling2_table(n)[n][k].clone()
}

/// The chain numbers `a_0..a_{n_max}` computed independently by four routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainNumbers {
    /// `Ã_n(2)`.
    #[serde(serialize_with = "decimal_vec")]
    pub via_tilde_a: Vec<BigInt>,
    /// `2 Σ_k k! S(n+1,k+1) - 1`.
    #[serde(serialize_with = "decimal_vec")]
    pub via_stirling: Vec<BigInt>,
    /// `a_n = Σ_{j=1}^n C(n,j) a_{n-j} + 2^n`.
    #[serde(serialize_with = "decimal_vec")]
    pub via_recurrence: Vec<BigInt>,
    /// EGF coefficients of `e^{2z}/(2 - e^z)`.
    #[serde(serialize_with = "decimal_vec")]
    pub via_egf: Vec<BigInt>,
}

impl ChainNumbers {
    pub fn agree(&self) -> bool {
        self.via_tilde_a == self.via_stirling
            && self.via_stirling == self.via_recurrence
            && self.via_recurrence == self.via_egf
    }
}

pub fn chain_numbers(n_max: usize) -> ChainNumbers {
    let two = BigInt::from(2);
    let via_tilde_a = binomial_eulerian_threeterm_polys(n_max)
        .iter()
        .map(|p| p.evaluate(&two))
        .collect();

    let s2 = stirling2_table(n_max + 1);
    let via_stirling = (0..=n_max)
        .map(|n| {
            let sum: BigInt = (0..=n).map(|k| factorial(k) * &s2[n + 1][k + 1]).sum();
            sum * 2 - 1
        })
        .collect();

    let mut via_recurrence: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=n_max {
        let row = binomial_row(n);
        let s: BigInt = (1..=n).map(|j| &row[j] * &via_recurrence[n - j]).sum();
        via_recurrence.push(s + pow2(n));
    }

    ChainNumbers {
        via_tilde_a,
        via_stirling,
        via_recurrence,
        via_egf: chain_number_egf(n_max).into_coeffs(),
    }
}

/// `e^{2z} / (2 - e^z)` to order `n`.
pub fn chain_number_egf(order: usize) -> TruncatedSeries<BigInt> {
    let num = TruncatedSeries::exp(&BigInt::from(2), order);
    let den = TruncatedSeries::constant(BigInt::from(2), order)
        .sub(&TruncatedSeries::exp(&BigInt::one(), order));
    num.div(&den).expect("constant term 1 is a unit")
}

fn series_of(polys: Vec<IntPoly>, order: usize) -> TruncatedSeries<IntPoly> {
    TruncatedSeries::new(polys, order)
}

/// `Ã(x,z) = e^{xz} A(x,z)` and the cleared closed form
/// `(x - e^{z(x-1)}) A(x,z) = x - 1`.
pub fn egf_tilde_a_checks(order: usize) -> Vec<IdentityCheck> {
    let a = series_of(eulerian_polys(order), order);
    let table = BinomialEulerianTable::build(order);
    let tilde = TruncatedSeries::from_fn(order, |n| table.row_poly(n));

    let exz = TruncatedSeries::exp(&IntPoly::x(), order);
    let product = compare_series("tildeA(x,z) = e^{xz} A(x,z)", &tilde, &exz.mul(&a));

    let denom = TruncatedSeries::constant(IntPoly::x(), order)
        .sub(&TruncatedSeries::exp(&IntPoly::linear(-1), order));
    let closed = compare_series(
        "(x - e^{z(x-1)}) A(x,z) = x - 1",
        &denom.mul(&a),
        &TruncatedSeries::constant(IntPoly::linear(-1), order),
    );
    vec![product, closed]
}

/// The two first-order PDEs in `z` and `x`, compared up to order `N - 1`.
pub fn egf_pde_checks(order: usize) -> Vec<IdentityCheck> {
    assert!(order >= 1, "PDE checks need order >= 1");
    let x = IntPoly::x();
    let x_one_minus_x = IntPoly::from_i64s(&[0, 1, -1]);

    let a = series_of(eulerian_polys(order), order);
    let a_z = a.derivative_z();
    let lhs = a_z.sub(&a_z.mul_z().scale(&x));
    let rhs = a.add(&a.derivative_x().scale(&x_one_minus_x));
    let eulerian_pde = compare_series(
        "(1 - xz) dA/dz = A + x(1-x) dA/dx",
        &lhs,
        &rhs.truncate(order - 1),
    );

    let t = series_of(binomial_eulerian_threeterm_polys(order), order);
    let t_z = t.derivative_z();
    let lhs = t_z.sub(&t_z.mul_z().scale(&x));
    let rhs = t
        .scale(&IntPoly::linear(1))
        .sub(&t.mul_z().scale(&x))
        .add(&t.derivative_x().scale(&x_one_minus_x));
    let tilde_pde = compare_series(
        "(1 - xz) dtildeA/dz = (1 + x - xz) tildeA + x(1-x) dtildeA/dx",
        &lhs,
        &rhs.truncate(order - 1),
    );
    vec![eulerian_pde, tilde_pde]
}

/// `Σ a_n z^n/n! = e^{2z}/(2 - e^z)` with `a_n = Ã_n(2)`.
pub fn egf_a2_check(order: usize) -> IdentityCheck {
    let two = BigInt::from(2);
    let values = TruncatedSeries::new(
        binomial_eulerian_threeterm_polys(order)
            .iter()
            .map(|p| p.evaluate(&two))
            .collect(),
        order,
    );
    compare_series(
        "tildeA(2,z) = e^{2z}/(2 - e^z)",
        &values,
        &chain_number_egf(order),
    )
}

/// Every generating-function identity of this module at order `N`.
pub fn egf_identity_checks(order: usize) -> Vec<IdentityCheck> {
    let mut out = egf_tilde_a_checks(order);
    out.extend(egf_pde_checks(order));
    out.push(egf_a2_check(order));
    out
}

/// Expected `Ã_n(1) = 1 + Σ_k C(n,k) k!`.
pub fn tilde_a_at_one(n: usize) -> BigInt {
    BigInt::one()
        + (1..=n)
            .map(|k| binomial(n, k) * factorial(k))
            .sum::<BigInt>()
}

/// Every listed route against the three-term route for `n <= n_max`.
pub fn route_agreement(n_max: usize, routes: &[Route], limit: EnumLimit) -> Result<IdentityCheck> {
    let reference = binomial_eulerian_threeterm_polys(n_max);
    let mut mismatches = Vec::new();
    for &route in routes {
        let polys = binomial_eulerian_polys(n_max, route, limit)?;
        for (n, (p, r)) in polys.iter().zip(&reference).enumerate() {
            let mut local = Vec::new();
            diff_int_polys(n, p, r, &mut local);
            mismatches.extend(local.into_iter().map(|m| Mismatch {
                term: format!("{}:{}", route.name(), m.term),
                ..m
            }));
        }
    }
    let names: Vec<_> = routes.iter().map(|r| r.name()).collect();
    Ok(IdentityCheck::new(
        format!("routes {} = three-term", names.join(",")),
        n_max,
        mismatches,
    ))
}

/// The symmetric identity for all `a, b >= 1` with `a + b <= max_ab`.
pub fn symmetric_identity_report(max_ab: usize) -> IdentityCheck {
    let table = EulerianTable::build(max_ab);
    let mut mismatches = Vec::new();
    for m in 2..=max_ab {
        for a in 1..m {
            let (l, r) = symmetric_identity_sides(a, m - a, &table).expect("table covers a+b");
            diff_ints(m, &format!("a={a},b={}", m - a), &l, &r, &mut mismatches);
        }
    }
    IdentityCheck::new("symmetric Eulerian binomial identity", max_ab, mismatches)
}

/// Palindromicity and the γ-vector of `Ã_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub n: usize,
    pub palindromic: bool,
    /// Empty when the polynomial is not palindromic.
    #[serde(serialize_with = "decimal_vec")]
    pub gamma: Vec<BigInt>,
    pub gamma_nonnegative: bool,
}

pub fn symmetry_reports(n_max: usize) -> Vec<SymmetryReport> {
    binomial_eulerian_threeterm_polys(n_max)
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let gamma = p.gamma_vector(n).unwrap_or_default();
            SymmetryReport {
                n,
                palindromic: p.is_palindromic(n),
                gamma_nonnegative: !gamma.is_empty()
                    && gamma.iter().all(|g| g.sign() != num_bigint::Sign::Minus),
                gamma,
            }
        })
        .collect()
}
