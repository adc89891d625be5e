//! Homogeneous binary forms over Q and their resultants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::primitive_integers;
use super::matrix::Matrix;
use super::poly::UniPoly;
use super::rat::{format_rat, Rat};
use crate::error::{Error, Result};

/// Σ c_i X^{d−i} Y^i, stored as `[c_0, …, c_d]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinForm {
    coeffs: Vec<Rat>,
}

impl BinForm {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::input("a binary form needs at least one coefficient"));
        }
        Ok(BinForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinForm::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect()).expect("nonempty")
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        BinForm::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect()).expect("nonempty")
    }

    /// The zero form of degree `d`.
    pub fn zero(d: usize) -> Self {
        BinForm { coeffs: vec![Rat::zero(); d + 1] }
    }

    /// X^{d−i} Y^i.
    pub fn monomial(d: usize, i: usize) -> Self {
        let mut f = Self::zero(d);
        f.coeffs[i] = Rat::one();
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let d = self.degree();
        let mut acc = Rat::zero();
        let mut ypow = Rat::one();
        let xpows = powers(x, d);
        for i in 0..=d {
            if !self.coeffs[i].is_zero() {
                acc += &self.coeffs[i] * &xpows[d - i] * &ypow;
            }
            ypow *= y;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BinForm { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Sum of two forms of the same degree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degrees");
        BinForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rat::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinForm { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BinForm::from_ints(&[1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// F(A, B) for forms A, B of a common degree.
    pub fn compose(&self, a: &Self, b: &Self) -> Self {
        assert_eq!(a.degree(), b.degree(), "substituting forms of different degrees");
        let d = self.degree();
        let apows = form_powers(a, d);
        let bpows = form_powers(b, d);
        let mut acc = BinForm::zero(d * a.degree());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&apows[d - i].mul(&bpows[i]).scale(c));
            }
        }
        acc
    }

    /// Primitive integer coefficients with positive first nonzero entry.
    pub fn normalized(&self) -> Self {
        BinForm::from_bigints(&primitive_integers(&self.coeffs))
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Multiplicity of the root (1:0), i.e. the largest a with Y^a | F.
    pub fn y_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// F(x, 1) as a polynomial in x.
    pub fn dehomogenize(&self) -> UniPoly<Rat> {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Y^{d−deg p} · Y^{deg p} p(X/Y).
    pub fn homogenize(p: &UniPoly<Rat>, d: usize) -> Self {
        assert!(p.is_zero() || p.deg() <= d);
        let mut f = Self::zero(d);
        for i in 0..=d {
            f.coeffs[i] = p.coeff(d - i);
        }
        f
    }

    /// Greatest common divisor, up to a constant. Zero forms are not allowed.
    pub fn gcd(&self, other: &Self) -> Self {
        assert!(!self.is_zero() && !other.is_zero(), "gcd with the zero form");
        let a = self.y_multiplicity().min(other.y_multiplicity());
        let g = self.dehomogenize().gcd(&other.dehomogenize());
        let gd = g.deg();
        Self::homogenize(&g, gd).mul(&Self::monomial(a, a)).normalized()
    }
}

fn powers(x: &Rat, d: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(d + 1);
    let mut acc = Rat::one();
    for _ in 0..=d {
        out.push(acc.clone());
        acc *= x;
    }
    out
}

fn form_powers(f: &BinForm, d: usize) -> Vec<BinForm> {
    let mut out = vec![BinForm::from_ints(&[1])];
    for i in 0..d {
        out.push(out[i].mul(f));
    }
    out
}

impl fmt::Display for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rat).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Determinant of the Sylvester matrix of two forms of arbitrary degrees.
pub fn sylvester_resultant(f: &BinForm, g: &BinForm) -> Rat {
    let (d, e) = (f.degree(), g.degree());
    let n = d + e;
    if n == 0 {
        return Rat::one();
    }
    let mut m = Matrix::<Rat>::zeros(n, n);
    for r in 0..e {
        for (i, c) in f.coeffs().iter().enumerate() {
            m.set(r, r + i, c.clone());
        }
    }
    for r in 0..d {
        for (i, c) in g.coeffs().iter().enumerate() {
            m.set(e + r, r + i, c.clone());
        }
    }
    m.determinant()
}

/// Resultant of two forms of the same positive degree.
pub fn resultant(f: &BinForm, g: &BinForm) -> Result<Rat> {
    if f.degree() != g.degree() {
        return Err(Error::input(format!(
            "resultant needs equal degrees, got {} and {}",
            f.degree(),
            g.degree()
        )));
    }
    if f.degree() == 0 {
        return Err(Error::input("resultant needs forms of degree at least 1"));
    }
    Ok(sylvester_resultant(f, g))
}
