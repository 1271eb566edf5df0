use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{IntPoly, Ring};

/// The four variables, in exponent-vector order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Q = 2,
    P = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Q, Var::P];

    fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Q => 'q',
            Var::P => 'p',
        }
    }
}

/// Exponents of `(x, y, q, p)`.
pub type Exponents = [u32; 4];

/// Sparse polynomial in `x, y, q, p` with big-integer coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

/// Serialized form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiTerm {
    pub exponents: Exponents,
    pub coeff: String,
}

impl MultiPoly {
    pub fn monomial(coeff: impl Into<BigInt>, exps: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, coeff.into());
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v as usize] = 1;
        Self::monomial(1, e)
    }

    /// Embeds a univariate polynomial as a polynomial in `v`.
    pub fn from_univariate(p: &IntPoly, v: Var) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = [0; 4];
            e[v as usize] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &Exponents) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v as usize]).max()
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn partial_derivative(&self, v: Var) -> Self {
        let i = v as usize;
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e2 = *e;
            e2[i] -= 1;
            (e2, c * e[i])
        }))
    }

    /// Substitutes an integer for `v`; the result no longer involves `v`.
    pub fn substitute(&self, v: Var, value: &BigInt) -> Self {
        let i = v as usize;
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e2 = *e;
            e2[i] = 0;
            (e2, c * Ring::pow(value, e[i] as usize))
        }))
    }

    /// Substitutes a polynomial for `v`.
    pub fn substitute_poly(&self, v: Var, value: &MultiPoly) -> Self {
        let i = v as usize;
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[i] = 0;
            let term = Self::monomial(c.clone(), rest) * value.pow(e[i] as usize);
            out = out + term;
        }
        out
    }

    pub fn evaluate(&self, values: &[BigInt; 4]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                Var::ALL.iter().fold(c.clone(), |acc, &v| {
                    acc * Ring::pow(&values[v as usize], e[v as usize] as usize)
                })
            })
            .sum()
    }

    /// The polynomial as a univariate one in `v`, or `None` if any other
    /// variable occurs.
    pub fn to_univariate(&self, v: Var) -> Option<IntPoly> {
        let i = v as usize;
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k != 0) {
                return None;
            }
            coeffs[e[i] as usize] += c;
        }
        Some(IntPoly::from_coeffs(coeffs))
    }

    pub fn pow(&self, k: usize) -> Self {
        Ring::pow(self, k)
    }

    pub fn to_serial(&self) -> Vec<MultiTerm> {
        self.terms
            .iter()
            .map(|(e, c)| MultiTerm {
                exponents: *e,
                coeff: c.to_string(),
            })
            .collect()
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_serial().serialize(serializer)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl Ring for MultiPoly {
    fn scale(&self, k: &BigInt) -> Self {
        self.scalar_mul(k)
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if *e == [0; 4] && c.abs().is_one() {
                return Some(self.clone());
            }
        }
        None
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let constant = e.iter().all(|&k| k == 0);
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for v in Var::ALL {
                match e[v as usize] {
                    0 => {}
                    1 => write!(f, "{}", v.name())?,
                    k => write!(f, "{}^{k}", v.name())?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(c: i64, e: Exponents) -> MultiPoly {
        MultiPoly::monomial(c, e)
    }

    /// `Ã_2(x,y,q,p) = pq³y³ + pq²xy + 2p²q²xy + p³qx²` as printed.
    fn tilde_a2() -> MultiPoly {
        m(1, [0, 3, 3, 1]) + m(1, [1, 1, 2, 1]) + m(2, [1, 1, 2, 2]) + m(1, [2, 0, 1, 3])
    }

    #[test]
    fn substitution_collapses_to_univariate() {
        let one = BigInt::one();
        let s = tilde_a2()
            .substitute(Var::Y, &one)
            .substitute(Var::Q, &one)
            .substitute(Var::P, &one);
        assert_eq!(
            s.to_univariate(Var::X).unwrap(),
            IntPoly::from_i64s(&[1, 3, 1])
        );
        assert!(tilde_a2().to_univariate(Var::X).is_none());
    }

    #[test]
    fn arithmetic_and_derivatives() {
        let x = MultiPoly::var(Var::X);
        let y = MultiPoly::var(Var::Y);
        let s = &x + &y;
        assert_eq!(
            &s * &s,
            m(1, [2, 0, 0, 0]) + m(2, [1, 1, 0, 0]) + m(1, [0, 2, 0, 0])
        );
        assert_eq!((&s - &s), MultiPoly::zero());
        assert_eq!(
            tilde_a2().partial_derivative(Var::P).coeff(&[1, 1, 2, 1]),
            BigInt::from(4)
        );
        let sub = tilde_a2().substitute_poly(Var::Y, &(MultiPoly::var(Var::Q) + MultiPoly::one()));
        let direct = tilde_a2()
            .substitute(Var::Y, &BigInt::from(2))
            .substitute(Var::Q, &BigInt::from(1));
        assert_eq!(sub.substitute(Var::Q, &BigInt::from(1)), direct);
        assert_eq!(
            tilde_a2().evaluate(&[1, 1, 1, 1].map(BigInt::from)),
            BigInt::from(5)
        );
        assert_eq!(
            tilde_a2().to_string(),
            "y^3q^3p + xyq^2p + 2xyq^2p^2 + x^2qp^3"
        );
    }

    #[test]
    fn serializes_as_decimal_strings() {
        let json = serde_json::to_string(&m(-3, [1, 0, 2, 0])).unwrap();
        assert_eq!(json, r#"[{"exponents":[1,0,2,0],"coeff":"-3"}]"#);
    }

    fn arb_multi() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..3), -5i64..5), 0..5).prop_map(
            |ts| {
                MultiPoly::from_terms(
                    ts.into_iter()
                        .map(|((a, b, c, d), k)| ([a, b, c, d], BigInt::from(k))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_multi(), b in arb_multi(), c in arb_multi()) {
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
