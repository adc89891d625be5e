//! Projective space over Z/p^s and the reduction map from P^n(Q).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::intfactor::is_prime_u64;
use crate::maps::point::ProjPoint;

/// Largest modulus p^s handled (products stay inside u128).
pub const MAX_MODULUS: u64 = 1 << 40;

/// A modulus p^s with p prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub s: u32,
    pub modulus: u64,
}

impl PrimePower {
    pub fn new(p: u64, s: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::input("precision s must be at least 1"));
        }
        let modulus = p.checked_pow(s).filter(|&m| m <= MAX_MODULUS).ok_or_else(|| Error::resource(format!("{p}^{s} exceeds 2^40")))?;
        Ok(PrimePower { p, s, modulus })
    }

    pub fn reduce(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("reduced")
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.modulus - b % self.modulus)
    }

    pub fn is_unit(&self, a: u64) -> bool {
        a % self.p != 0
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        let e = (a as i128).extended_gcd(&(self.modulus as i128));
        (e.gcd == 1).then(|| e.x.rem_euclid(self.modulus as i128) as u64)
    }
}

/// A point of P^n(Z/p^s): first unit coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResiduePoint {
    pub coords: Vec<u64>,
}

impl ResiduePoint {
    /// Scales a vector so its first unit coordinate is 1; `None` without a unit.
    pub fn normalize(ring: &PrimePower, v: &[u64]) -> Option<Self> {
        let i = v.iter().position(|&x| ring.is_unit(x))?;
        let inv = ring.inv(v[i]).expect("unit");
        Some(ResiduePoint { coords: v.iter().map(|&x| ring.mul(x, inv)).collect() })
    }

    /// Affine label x = X/Y on P¹ when Y is a unit, otherwise `inf` (s = 1)
    /// or the coordinates.
    pub fn p1_label(&self, ring: &PrimePower) -> String {
        if self.coords.len() != 2 {
            return self.to_string();
        }
        match ring.inv(self.coords[1]) {
            Some(inv) => ring.mul(self.coords[0], inv).to_string(),
            None if self.coords[1] == 0 => "inf".to_string(),
            None => self.to_string(),
        }
    }
}

impl fmt::Display for ResiduePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl Serialize for ResiduePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All points of P^n(Z/p^s) in a fixed order: by position of the first unit
/// coordinate, then lexicographically.
#[derive(Clone, Debug)]
pub struct ResidueSystem {
    pub ring: PrimePower,
    pub dimension: usize,
    pub points: Vec<ResiduePoint>,
}

impl ResidueSystem {
    pub fn new(dimension: usize, p: u64, s: u32, cap: u64) -> Result<Self> {
        let ring = PrimePower::new(p, s)?;
        let count = residue_count(dimension, p, s);
        if count > cap as u128 {
            return Err(Error::resource(format!("{count} residue points exceed the enumeration cap {cap}")));
        }
        let m = ring.modulus;
        let mut points = Vec::with_capacity(count as usize);
        for lead in 0..=dimension {
            // coordinates before `lead` are non-units, after it arbitrary
            let ranges: Vec<u64> = (0..=dimension).map(|i| if i < lead { m / p } else if i == lead { 1 } else { m }).collect();
            let total: u64 = ranges.iter().product();
            for mut code in 0..total {
                let mut coords = vec![0u64; dimension + 1];
                for i in (0..=dimension).rev() {
                    let digit = code % ranges[i];
                    code /= ranges[i];
                    coords[i] = if i < lead { digit * p } else if i == lead { 1 } else { digit };
                }
                points.push(ResiduePoint { coords });
            }
        }
        debug_assert_eq!(points.len() as u128, count);
        Ok(ResidueSystem { ring, dimension, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// #P^n(Z/p^s) = ((p^{n+1} − 1)/(p − 1))·p^{n(s−1)}.
pub fn residue_count(n: usize, p: u64, s: u32) -> u128 {
    let p = p as u128;
    let proj = (p.pow(n as u32 + 1) - 1) / (p - 1);
    proj * p.pow(n as u32 * (s.max(1) - 1))
}

/// The reduction r_s of a rational point.
pub fn reduce_point(x: &ProjPoint, p: u64, s: u32) -> Result<ResiduePoint> {
    let ring = PrimePower::new(p, s)?;
    let v: Vec<u64> = x.coords().iter().map(|c| ring.reduce(c)).collect();
    ResiduePoint::normalize(&ring, &v).ok_or_else(|| Error::input(format!("{x} has no unit coordinate at {p}")))
}
