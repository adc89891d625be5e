//! Morphisms of P¹ given by pairs of binary forms with nonzero resultant.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::point::{make_primitive, ProjPoint};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::binform::{resultant, BinForm};
use crate::exact::intfactor::primes_up_to;
use crate::exact::poly::UniPoly;
use crate::exact::rat::Rat;

/// Integer binary forms in the [`BinForm`] index convention.
pub(crate) mod intform {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        let bnz: Vec<(usize, &BigInt)> = b.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &bnz {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn add_scaled(acc: &mut [BigInt], c: &BigInt, f: &[BigInt]) {
        for (a, x) in acc.iter_mut().zip(f) {
            if !x.is_zero() {
                *a += c * x;
            }
        }
    }

    /// F(A, B) for forms A, B of a common degree.
    pub fn compose(f: &[BigInt], a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = f.len() - 1;
        let e = a.len() - 1;
        let mut apows = vec![vec![BigInt::one()]];
        let mut bpows = vec![vec![BigInt::one()]];
        let needed_a = f.iter().position(|c| !c.is_zero()).map(|i| d - i).unwrap_or(0);
        let needed_b = f.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        for k in 0..needed_a {
            let next = mul(&apows[k], a);
            apows.push(next);
        }
        for k in 0..needed_b {
            let next = mul(&bpows[k], b);
            bpows.push(next);
        }
        let mut acc = vec![BigInt::zero(); d * e + 1];
        for (i, c) in f.iter().enumerate() {
            if !c.is_zero() {
                add_scaled(&mut acc, c, &mul(&apows[d - i], &bpows[i]));
            }
        }
        acc
    }

    /// F(x, y) by homogeneous Horner evaluation.
    pub fn eval(f: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = f[0].clone();
        let mut ypow = BigInt::one();
        for c in &f[1..] {
            ypow *= y;
            acc *= x;
            if !c.is_zero() {
                acc += c * &ypow;
            }
        }
        acc
    }
}

/// A morphism (F : G) of P¹. The forms are stored as integer vectors with
/// joint content 1 and positive first nonzero coefficient (F before G).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P1Map {
    f: Vec<BigInt>,
    g: Vec<BigInt>,
}

fn joint_normalize(f: &mut Vec<BigInt>, g: &mut Vec<BigInt>) {
    let d = f.len();
    let mut all: Vec<BigInt> = f.drain(..).chain(g.drain(..)).collect();
    make_primitive(&mut all);
    *g = all.split_off(d);
    *f = all;
}

impl P1Map {
    /// Validates a pair of forms: equal degree ≥ 1 and nonzero resultant.
    pub fn new(f: &BinForm, g: &BinForm) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::input(format!("forms of degrees {} and {}", f.degree(), g.degree())));
        }
        if f.degree() == 0 {
            return Err(Error::input("a P1 map needs forms of degree at least 1"));
        }
        if resultant(f, g)?.is_zero() {
            return Err(Error::validation(format!("({f} : {g}) has a common root, not a morphism")));
        }
        let mut joint: Vec<Rat> = f.coeffs().iter().chain(g.coeffs()).cloned().collect();
        crate::exact::field::Field::normalize_line(&mut joint);
        let mut ints: Vec<BigInt> = joint.iter().map(|x| x.to_integer()).collect();
        let gi = ints.split_off(f.degree() + 1);
        Ok(P1Map { f: ints, g: gi })
    }

    /// From coefficient lists in the [`BinForm`] convention.
    pub fn from_ints(f: &[i64], g: &[i64]) -> Result<Self> {
        Self::new(&BinForm::from_ints(f), &BinForm::from_ints(g))
    }

    /// The polynomial map x ↦ p(x), as (Y^d p(X/Y) : Y^d).
    pub fn polynomial(p: &UniPoly<Rat>) -> Result<Self> {
        let d = p.deg().max(1);
        Self::new(&BinForm::homogenize(p, d), &BinForm::monomial(d, d))
    }

    /// x ↦ p(x) with integer coefficients listed in ascending powers of x.
    pub fn polynomial_ints(ascending: &[i64]) -> Result<Self> {
        Self::polynomial(&UniPoly::from_ints(ascending))
    }

    pub fn identity() -> Self {
        P1Map { f: vec![BigInt::one(), BigInt::zero()], g: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn f_coeffs(&self) -> &[BigInt] {
        &self.f
    }

    pub fn g_coeffs(&self) -> &[BigInt] {
        &self.g
    }

    pub fn forms(&self) -> (BinForm, BinForm) {
        (BinForm::from_bigints(&self.f), BinForm::from_bigints(&self.g))
    }

    /// All coefficients of F followed by those of G.
    pub fn all_coeffs(&self) -> impl Iterator<Item = &BigInt> {
        self.f.iter().chain(&self.g)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let mut f = intform::compose(&self.f, &other.f, &other.g);
        let mut g = intform::compose(&self.g, &other.f, &other.g);
        joint_normalize(&mut f, &mut g);
        P1Map { f, g }
    }

    /// self ∘ other, refusing results above the degree cap.
    pub fn compose_capped(&self, other: &Self, caps: &Caps) -> Result<Self> {
        caps.check_degree(self.degree() as u128 * other.degree() as u128)?;
        Ok(self.compose(other))
    }

    /// The n-th iterate, n ≥ 1, by repeated squaring.
    pub fn iterate(&self, n: u32, caps: &Caps) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("iterate needs n >= 1"));
        }
        let degree = (self.degree() as u128).checked_pow(n).unwrap_or(u128::MAX);
        caps.check_degree(degree)?;
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.compose(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.compose(&base);
        }
        Ok(result.expect("n >= 1"))
    }

    /// Image of (x : y) as a primitive integer pair.
    pub fn apply_ints(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        let mut v = vec![intform::eval(&self.f, x, y), intform::eval(&self.g, x, y)];
        make_primitive(&mut v);
        let b = v.pop().expect("two");
        (v.pop().expect("two"), b)
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        if p.dimension() != 1 {
            return Err(Error::input(format!("{p} is not a point of P1")));
        }
        let (a, b) = self.apply_ints(&p.coords()[0], &p.coords()[1]);
        Ok(ProjPoint::from_bigints(vec![a, b]).expect("morphism has no base points"))
    }

    /// Resultant of the normalized forms.
    pub fn resultant(&self) -> BigInt {
        let (f, g) = self.forms();
        resultant(&f, &g).expect("equal degrees").to_integer()
    }

    /// Reduction mod p keeps the degree and stays a morphism.
    pub fn has_good_reduction(&self, p: u64) -> bool {
        !(self.resultant() % BigInt::from(p)).is_zero()
    }

    /// Primes p ≤ bound of good reduction.
    pub fn good_reduction_primes(&self, bound: u64) -> Vec<u64> {
        let r = self.resultant();
        primes_up_to(bound).into_iter().filter(|&p| !(&r % BigInt::from(p)).is_zero()).collect()
    }

    /// True when the map is x ↦ p(x) for a polynomial p, i.e. G = c·Y^d.
    pub fn is_polynomial(&self) -> bool {
        self.g[..self.degree()].iter().all(Zero::is_zero)
    }

    /// The bare map with all coefficients in the form x ↦ F(x,1)/G(x,1).
    pub fn rational_function(&self) -> (UniPoly<Rat>, UniPoly<Rat>) {
        let (f, g) = self.forms();
        (f.dehomogenize(), g.dehomogenize())
    }
}

impl fmt::Display for P1Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_p1(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq() -> P1Map {
        P1Map::from_ints(&[1, 0, 0], &[0, 0, 1]).unwrap()
    }

    fn two_x() -> P1Map {
        P1Map::from_ints(&[2, 0], &[0, 1]).unwrap()
    }

    fn chebyshev_like() -> P1Map {
        P1Map::from_ints(&[1, 0, -1], &[0, 0, 1]).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(two_x().compose(&sq()), P1Map::from_ints(&[2, 0, 0], &[0, 0, 1]).unwrap());
        assert_eq!(sq().compose(&sq()), P1Map::from_ints(&[1, 0, 0, 0, 0], &[0, 0, 0, 0, 1]).unwrap());
        let h = chebyshev_like();
        assert_eq!(P1Map::identity().compose(&h), h);
        assert_eq!(h.compose(&P1Map::identity()), h);
    }

    #[test]
    fn iterate_examples() {
        let caps = Caps::default();
        assert_eq!(sq().iterate(2, &caps).unwrap(), sq().compose(&sq()));
        assert_eq!(two_x().iterate(3, &caps).unwrap(), P1Map::from_ints(&[8, 0], &[0, 1]).unwrap());
        // (X² − Y²)² − Y⁴ = X⁴ − 2X²Y²
        let expected = P1Map::from_ints(&[1, 0, -2, 0, 0], &[0, 0, 0, 0, 1]).unwrap();
        assert_eq!(chebyshev_like().iterate(2, &caps).unwrap(), expected);
        assert!(matches!(sq().iterate(13, &caps), Err(Error::Resource(_))));
    }

    #[test]
    fn good_reduction() {
        assert_eq!(chebyshev_like().good_reduction_primes(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(two_x().good_reduction_primes(10), vec![3, 5, 7]);
        let degenerate = P1Map::from_ints(&[1, 0, 0], &[0, 0, 7]).unwrap();
        assert!(!degenerate.good_reduction_primes(10).contains(&7));
    }

    #[test]
    fn validation() {
        assert!(matches!(P1Map::from_ints(&[1, 0, -1], &[1, 0, -1]), Err(Error::Validation(_))));
        assert!(matches!(P1Map::from_ints(&[1, 0], &[0, 0, 1]), Err(Error::Input(_))));
    }

    #[test]
    fn apply_and_polynomial() {
        let f = P1Map::polynomial_ints(&[-1, 0, 1]).unwrap();
        assert_eq!(f, chebyshev_like());
        assert_eq!(f.apply(&ProjPoint::affine_int(3)).unwrap(), ProjPoint::affine_int(8));
        assert_eq!(f.apply(&ProjPoint::infinity()).unwrap(), ProjPoint::infinity());
        assert_eq!(two_x().apply(&ProjPoint::affine(&crate::exact::rat::ratio(1, 3))).unwrap().to_affine(), Some(crate::exact::rat::ratio(2, 3)));
        assert!(f.is_polynomial());
    }
}
