//! Elements a + b·sqrt(d) of a quadratic field.
//!
//! A value with `b = 0` is rational and combines with any radicand; two
//! irrational values must share `d`. The operator impls panic on a radicand
//! mismatch; the `try_*` methods report it as [`Error::MixedRadicand`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::{normalize_by_first, Field};
use super::rat::{format_rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadElem {
    a: Rat,
    b: Rat,
    /// Radicand; 0 exactly when `b = 0`.
    d: i64,
}

/// True when `d` is a squarefree integer other than 0 and 1.
pub fn is_valid_radicand(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadElem {
    pub fn new(a: Rat, b: Rat, d: i64) -> Result<Self> {
        if !is_valid_radicand(d) {
            return Err(Error::input(format!("radicand {d} is not squarefree")));
        }
        Ok(Self::raw(a, b, d))
    }

    pub fn rational(a: Rat) -> Self {
        Self::raw(a, Rat::zero(), 0)
    }

    fn raw(a: Rat, b: Rat, d: i64) -> Self {
        let d = if b.is_zero() { 0 } else { d };
        QuadElem { a, b, d }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// Radicand of an irrational value, `None` for rationals.
    pub fn radicand(&self) -> Option<i64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn conjugate(&self) -> Self {
        Self::raw(self.a.clone(), -self.b.clone(), self.d)
    }

    /// a² − d·b², a rational.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    fn merge(&self, other: &Self) -> Result<i64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(Error::MixedRadicand(d1, d2)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.merge(other)?;
        Ok(Self::raw(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.merge(other)?;
        let dr = Rat::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + dr * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::raw(a, b, d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.merge(other)?;
        self.try_mul(&other.inv())
    }

    /// Text form of the map grammar: `a` for rationals, `(a,b)` otherwise.
    pub fn format_pair(&self) -> String {
        if self.b.is_zero() {
            format_rat(&self.a)
        } else {
            format!("({},{})", format_rat(&self.a), format_rat(&self.b))
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rat(&self.a));
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}*sqrt({})", format_rat(&self.a), sign, format_rat(&self.b.abs()), self.d)
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("quadratic field mismatch")
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("quadratic field mismatch")
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("quadratic field mismatch")
    }
}

impl Div for QuadElem {
    type Output = QuadElem;
    fn div(self, rhs: Self) -> Self {
        self.try_div(&rhs).expect("quadratic field mismatch")
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> Self {
        Self::raw(-self.a, -self.b, self.d)
    }
}

impl Zero for QuadElem {
    fn zero() -> Self {
        Self::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadElem {
    fn one() -> Self {
        Self::rational(Rat::one())
    }
}

impl Field for QuadElem {
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        Self::raw(&self.a / &n, -(&self.b / &n), self.d)
    }

    fn from_rat(r: &Rat) -> Self {
        Self::rational(r.clone())
    }

    fn to_rat(&self) -> Option<Rat> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn normalize_line(v: &mut [Self]) {
        if v.iter().all(|x| x.b.is_zero()) {
            let mut r: Vec<Rat> = v.iter().map(|x| x.a.clone()).collect();
            Rat::normalize_line(&mut r);
            for (x, a) in v.iter_mut().zip(r) {
                *x = Self::rational(a);
            }
        } else {
            normalize_by_first(v);
        }
    }

    fn field_degree(sample: &[Self]) -> usize {
        if sample.iter().any(|x| x.d != 0) {
            2
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn q(a: i64, b: i64) -> QuadElem {
        QuadElem::new(rat(a), rat(b), 2).unwrap()
    }

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let s = q(0, 1);
        assert_eq!(s.clone() * s.clone(), QuadElem::rational(rat(2)));
        let x = q(1, 1);
        assert_eq!(x.clone() * x.inv(), QuadElem::one());
        assert_eq!(x.conjugate(), q(1, -1));
        assert_eq!(x.norm(), rat(-1));
    }

    #[test]
    fn mixed_radicands_rejected() {
        let a = q(0, 1);
        let b = QuadElem::new(rat(0), rat(1), 3).unwrap();
        assert_eq!(a.try_mul(&b), Err(Error::MixedRadicand(2, 3)));
        assert!(a.try_add(&QuadElem::rational(rat(5))).is_ok());
    }

    #[test]
    fn radicand_validation() {
        assert!(QuadElem::new(rat(1), rat(1), 8).is_err());
        assert!(QuadElem::new(rat(1), rat(1), -1).is_ok());
        assert!(QuadElem::new(rat(1), rat(1), 1).is_err());
    }
}
