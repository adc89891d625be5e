//! The field abstraction used by the polynomial and matrix code.
//!
//! Three implementations exist: [`Rat`] (the rationals), [`QuadElem`]
//! (a quadratic field Q(sqrt d)) and [`AlgElem`] (a simple algebraic
//! extension F[t]/(q) of one of the former). Linear algebra, characteristic
//! polynomials and eigenvalue-ratio tests are written once against this trait.
//!
//! [`QuadElem`]: super::quad::QuadElem
//! [`AlgElem`]: super::alg::AlgElem

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::Rat;

pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn from_rat(r: &Rat) -> Self;

    /// The value as a rational number, if it is one.
    fn to_rat(&self) -> Option<Rat>;

    /// Rescales a vector (not all zero) to the canonical representative of its line.
    fn normalize_line(v: &mut [Self]);

    /// An upper bound for `[K : Q]` where `K` is the field generated by `sample`.
    fn field_degree(sample: &[Self]) -> usize;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(n)))
    }
}

/// Divides a vector by its first nonzero entry; the generic line normalization.
pub fn normalize_by_first<F: Field>(v: &mut [F]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = lead.inv();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
    }
}

impl Field for Rat {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }

    /// Clears denominators, divides by the content and makes the first
    /// nonzero entry positive.
    fn normalize_line(v: &mut [Self]) {
        let ints = primitive_integers(v);
        for (x, n) in v.iter_mut().zip(ints) {
            *x = Rat::from_integer(n);
        }
    }

    fn field_degree(_: &[Self]) -> usize {
        1
    }
}

/// Primitive integer representative of a rational vector: denominators
/// cleared, content removed, first nonzero entry positive. A zero vector
/// maps to zeros.
pub fn primitive_integers(v: &[Rat]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if g.is_zero() {
        return ints;
    }
    let negate = ints.iter().find(|n| !n.is_zero()).map(|n| n.is_negative()).unwrap_or(false);
    for n in ints.iter_mut() {
        *n = &*n / &g;
        if negate {
            *n = -&*n;
        }
    }
    ints
}
