//! Ball arithmetic on high-precision binary floats: a midpoint and a
//! radius that is always rounded up, so every comparison is certified.

use std::cmp::Ordering;
use std::fmt;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

type Float = FBig<HalfEven>;

/// Working precision in bits.
pub const PRECISION: usize = 160;

/// Relative error of one correctly rounded operation, with slack for `ln`.
fn unit() -> f64 {
    2f64.powi(-(PRECISION as i32) + 4)
}

fn to_ibig(n: &BigInt) -> IBig {
    let (sign, words) = n.to_u64_digits();
    let mag = IBig::from(UBig::from_words(&words));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn round(x: Float) -> Float {
    x.with_precision(PRECISION).value()
}

fn mid_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

/// Upper bound on |x| as an f64.
fn abs_upper(x: &Float) -> f64 {
    mid_f64(x).abs().next_up().next_up()
}

/// An interval [mid − rad, mid + rad] known to contain the exact value.
#[derive(Clone, Debug)]
pub struct Real {
    mid: Float,
    rad: f64,
}

impl Real {
    pub fn zero() -> Self {
        Real { mid: round(Float::from(0)), rad: 0.0 }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let exact = Float::from(to_ibig(n));
        let mid = round(exact);
        let rad = if n.bits() as usize > PRECISION { abs_upper(&mid) * unit() } else { 0.0 };
        Real { mid, rad: rad.next_up() }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Natural logarithm of a positive integer.
    pub fn ln_bigint(n: &BigInt) -> Self {
        assert!(n.is_positive(), "logarithm of a non-positive integer");
        if n.bits() == 1 {
            return Self::zero();
        }
        let x = round(Float::from(to_ibig(n)));
        let mid = x.ln();
        // relative input error δ shifts the logarithm by at most 2δ
        let rad = abs_upper(&mid) * unit() + 4.0 * unit();
        Real { mid, rad: rad.next_up() }
    }

    pub fn max(&self, other: &Self) -> Self {
        let mid = if self.mid >= other.mid { self.mid.clone() } else { other.mid.clone() };
        Real { mid, rad: self.rad.max(other.rad) }
    }

    /// Division by a nonzero integer.
    pub fn div_bigint(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division by zero");
        let divisor = round(Float::from(to_ibig(k)));
        let mid = round(&self.mid / &divisor);
        let kf = mid_f64(&divisor).abs().next_down().next_down().max(f64::MIN_POSITIVE);
        let rad = (self.rad / kf).next_up() + abs_upper(&mid) * unit();
        Real { mid, rad: rad.next_up() }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        let factor = Real::from_bigint(k);
        let mid = round(&self.mid * &factor.mid);
        let rad = self.rad * abs_upper(&factor.mid) + factor.rad * abs_upper(&self.mid) + self.rad * factor.rad;
        Real { rad: (rad.next_up() + abs_upper(&mid) * unit()).next_up(), mid }
    }

    /// Rigorous lower bound as an f64.
    pub fn lower(&self) -> f64 {
        (mid_f64(&self.mid).next_down().next_down() - self.rad).next_down()
    }

    /// Rigorous upper bound as an f64.
    pub fn upper(&self) -> f64 {
        (mid_f64(&self.mid).next_up().next_up() + self.rad).next_up()
    }

    pub fn radius(&self) -> f64 {
        self.rad
    }

    /// Nearest f64 to the midpoint.
    pub fn to_f64(&self) -> f64 {
        mid_f64(&self.mid)
    }

    /// Certified comparison: `Some(Greater)` only if every value in self
    /// exceeds every value in other.
    pub fn certified_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self - other;
        let m = mid_f64(&diff.mid);
        if m - diff.rad > 0.0 && (m.next_down().next_down() - diff.rad) > 0.0 {
            Some(Ordering::Greater)
        } else if m + diff.rad < 0.0 && (m.next_up().next_up() + diff.rad) < 0.0 {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn certainly_gt(&self, other: &Self) -> bool {
        self.certified_cmp(other) == Some(Ordering::Greater)
    }

    /// Decimal midpoint with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let d = self.mid.to_decimal().value();
        d.with_precision(digits).value().to_string()
    }
}

impl std::ops::Add for &Real {
    type Output = Real;
    fn add(self, other: &Real) -> Real {
        let mid = round(&self.mid + &other.mid);
        let rad = (self.rad + other.rad).next_up() + abs_upper(&mid) * unit();
        Real { mid, rad: rad.next_up() }
    }
}

impl std::ops::Sub for &Real {
    type Output = Real;
    fn sub(self, other: &Real) -> Real {
        let mid = round(&self.mid - &other.mid);
        let rad = (self.rad + other.rad).next_up() + abs_upper(&mid) * unit();
        Real { mid, rad: rad.next_up() }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal(30))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logarithms_enclose_f64_values() {
        for n in [2i64, 3, 10, 1_000_003] {
            let l = Real::ln_bigint(&BigInt::from(n));
            assert!(l.lower() <= (n as f64).ln() + 1e-15 && (n as f64).ln() - 1e-15 <= l.upper());
            assert!(l.radius() < 1e-40);
        }
        let big = BigInt::from(2).pow(5000);
        let l = Real::ln_bigint(&big);
        assert!((l.to_f64() - 5000.0 * 2f64.ln()).abs() < 1e-9);
        assert_eq!(Real::ln_bigint(&BigInt::from(1)).to_f64(), 0.0);
    }

    #[test]
    fn certified_comparisons() {
        let a = Real::ln_bigint(&BigInt::from(3));
        let b = Real::ln_bigint(&BigInt::from(4));
        assert!(b.certainly_gt(&a));
        assert_eq!(a.certified_cmp(&a), None);
        let half = Real::ln_bigint(&BigInt::from(4)).div_bigint(&BigInt::from(2));
        assert!((half.to_f64() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(Real::from_i64(7).to_decimal(5), "7");
    }
}
