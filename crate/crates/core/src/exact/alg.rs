//! Simple algebraic extensions F[t]/(q) for an irreducible q over F.
//!
//! Used to test a conjugate packet of eigenvectors one representative at a
//! time: one root of q is adjoined symbolically and the Galois conjugates
//! behave identically.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::{normalize_by_first, Field};
use super::poly::UniPoly;
use super::rat::Rat;

#[derive(Clone, Debug)]
pub struct AlgElem<F: Field> {
    value: UniPoly<F>,
    modulus: Option<Arc<UniPoly<F>>>,
}

/// Context for one extension: the monic modulus.
#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    modulus: Arc<UniPoly<F>>,
}

impl<F: Field> Extension<F> {
    /// `q` must be irreducible of degree ≥ 1 over F; this is not re-checked.
    pub fn new(q: &UniPoly<F>) -> Self {
        assert!(q.deg() >= 1, "extension by a constant");
        Extension { modulus: Arc::new(q.monic()) }
    }

    /// The class of t, a root of the modulus.
    pub fn generator(&self) -> AlgElem<F> {
        self.element(UniPoly::x())
    }

    pub fn element(&self, p: UniPoly<F>) -> AlgElem<F> {
        AlgElem { value: p.rem(&self.modulus), modulus: Some(self.modulus.clone()) }
    }

    pub fn embed(&self, c: &F) -> AlgElem<F> {
        self.element(UniPoly::constant(c.clone()))
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }
}

impl<F: Field> AlgElem<F> {
    pub fn constant(c: F) -> Self {
        AlgElem { value: UniPoly::constant(c), modulus: None }
    }

    pub fn representative(&self) -> &UniPoly<F> {
        &self.value
    }

    fn modulus_of(&self, other: &Self) -> Option<Arc<UniPoly<F>>> {
        match (&self.modulus, &other.modulus) {
            (Some(a), Some(b)) => {
                debug_assert!(a == b, "elements of different extensions");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn build(value: UniPoly<F>, modulus: Option<Arc<UniPoly<F>>>) -> Self {
        let value = match &modulus {
            Some(m) => value.rem(m),
            None => value,
        };
        AlgElem { value, modulus }
    }
}

impl<F: Field> PartialEq for AlgElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<F: Field> Eq for AlgElem<F> {}

impl<F: Field> Hash for AlgElem<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl<F: Field> fmt::Display for AlgElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.value)
    }
}

impl<F: Field> Add for AlgElem<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let m = self.modulus_of(&rhs);
        Self::build(&self.value + &rhs.value, m)
    }
}

impl<F: Field> Sub for AlgElem<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let m = self.modulus_of(&rhs);
        Self::build(&self.value - &rhs.value, m)
    }
}

impl<F: Field> Mul for AlgElem<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let m = self.modulus_of(&rhs);
        Self::build(&self.value * &rhs.value, m)
    }
}

impl<F: Field> Div for AlgElem<F> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<F: Field> Neg for AlgElem<F> {
    type Output = Self;
    fn neg(self) -> Self {
        AlgElem { value: -&self.value, modulus: self.modulus }
    }
}

impl<F: Field> Zero for AlgElem<F> {
    fn zero() -> Self {
        Self::constant(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl<F: Field> One for AlgElem<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Field for AlgElem<F> {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.value.is_constant() {
            return AlgElem { value: UniPoly::constant(self.value.coeff(0).inv()), modulus: self.modulus.clone() };
        }
        let m = self.modulus.as_ref().expect("non-constant element without modulus");
        let (g, s, _) = self.value.ext_gcd(m);
        assert_eq!(g.deg(), 0, "modulus is not irreducible");
        Self::build(s, Some(m.clone()))
    }

    fn from_rat(r: &Rat) -> Self {
        Self::constant(F::from_rat(r))
    }

    fn to_rat(&self) -> Option<Rat> {
        if self.value.is_constant() {
            self.value.coeff(0).to_rat()
        } else {
            None
        }
    }

    fn normalize_line(v: &mut [Self]) {
        normalize_by_first(v);
    }

    fn field_degree(sample: &[Self]) -> usize {
        let ext = sample.iter().find_map(|x| x.modulus.as_ref().map(|m| m.deg())).unwrap_or(1);
        let base: Vec<F> = sample.iter().flat_map(|x| x.value.coeffs().to_vec()).collect();
        let base_mod: Vec<F> = sample
            .iter()
            .find_map(|x| x.modulus.as_ref().map(|m| m.coeffs().to_vec()))
            .unwrap_or_default();
        let all: Vec<F> = base.into_iter().chain(base_mod).collect();
        ext * F::field_degree(&all)
    }
}
