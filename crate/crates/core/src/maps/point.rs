//! Rational points of projective space.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::field::primitive_integers;
use crate::exact::rat::{format_rat, parse_rat, Rat};

/// A point of Pⁿ(Q), stored as primitive integer coordinates whose first
/// nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

/// Primitive integer vector with positive first nonzero entry, in place.
pub fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if negate {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

impl ProjPoint {
    pub fn new(coords: &[Rat]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::input("a projective point needs at least two coordinates"));
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::input("all coordinates of a projective point are zero"));
        }
        Ok(ProjPoint { coords: primitive_integers(coords) })
    }

    pub fn from_bigints(mut coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() < 2 || coords.iter().all(Zero::is_zero) {
            return Err(Error::input("not a projective point"));
        }
        make_primitive(&mut coords);
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::from_bigints(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The point (x : 1) of P¹.
    pub fn affine(x: &Rat) -> Self {
        ProjPoint::new(&[x.clone(), Rat::one()]).expect("nonzero")
    }

    pub fn affine_int(x: i64) -> Self {
        Self::affine(&Rat::from_integer(x.into()))
    }

    /// The point (1 : 0) of P¹.
    pub fn infinity() -> Self {
        ProjPoint { coords: vec![BigInt::one(), BigInt::zero()] }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Projective dimension n of the ambient Pⁿ.
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn rat_coords(&self) -> Vec<Rat> {
        self.coords.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.len() == 2 && self.coords[1].is_zero()
    }

    /// x = X/Y for a point of P¹ other than ∞.
    pub fn to_affine(&self) -> Option<Rat> {
        if self.coords.len() != 2 || self.coords[1].is_zero() {
            return None;
        }
        Some(Rat::new(self.coords[0].clone(), self.coords[1].clone()))
    }

    /// The P¹ text form: `p/q`, an integer, or `inf`.
    pub fn p1_string(&self) -> String {
        match self.to_affine() {
            Some(x) => format_rat(&x),
            None if self.coords.len() == 2 => "inf".to_string(),
            None => self.to_string(),
        }
    }

    /// Parses `inf`, a rational number, or `(a:b:…)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "inf" || t == "∞" {
            return Ok(Self::infinity());
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            let coords = inner.split(':').map(parse_rat).collect::<Result<Vec<_>>>()?;
            return Self::new(&coords);
        }
        Ok(Self::affine(&parse_rat(t)?))
    }

    /// log max |coordinate|, the naive height of the primitive representative.
    pub fn height_magnitude(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).max().expect("nonempty")
    }

    /// Key for the enumeration order of P¹(Q): height, then |p|, then sign,
    /// then the denominator, for x = p/q with q ≥ 0.
    fn p1_key(&self) -> (BigInt, BigInt, bool, BigInt) {
        let (mut p, mut q) = (self.coords[0].clone(), self.coords[1].clone());
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let h = p.abs().max(q.clone());
        (h, p.abs(), p.is_negative(), q)
    }
}

/// Deterministic order on points of P¹(Q): increasing height
/// max(|p|, q), then lexicographic on (|p|, sign, q). Points of higher
/// dimension compare by coordinates.
pub fn canonical_cmp(a: &ProjPoint, b: &ProjPoint) -> Ordering {
    if a.coords.len() == 2 && b.coords.len() == 2 {
        a.p1_key().cmp(&b.p1_key())
    } else {
        a.coords.len().cmp(&b.coords.len()).then_with(|| a.coords.cmp(&b.coords))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.p1_string())
    }
}
