//! Weil and canonical heights over Q, certified preperiodicity, and
//! rational preperiodic portraits.

pub mod canonical;
pub mod portrait;
pub mod preper;
pub mod real;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::Matrix;
use crate::exact::rat::Rat;
use crate::maps::p1::P1Map;
use crate::maps::point::ProjPoint;

pub use canonical::{canonical_height, canonical_height_with_iterations, HeightEstimate};
pub use portrait::{rational_portrait, Portrait};
pub use preper::{is_preperiodic, Preperiodicity, WanderingWitness};
pub use real::Real;

/// log max |x_i| over the primitive integer coordinates.
pub fn weil_height(x: &ProjPoint) -> Real {
    Real::ln_bigint(&x.height_magnitude())
}

/// The two sides of the per-step comparison |h(f(P)) − d·h(P)| ≤ C.
#[derive(Clone, Debug)]
pub struct HeightConstant {
    /// h(f(P)) − d·h(P) ≤ upper, from coefficient size.
    pub upper: Real,
    /// d·h(P) − h(f(P)) ≤ lower, from the Bézout cofactors.
    pub lower: Real,
    /// Largest coefficient among the cofactors A, B, A', B'.
    pub cofactor_bound: BigInt,
}

impl HeightConstant {
    /// C = max(upper, lower), never below 0.
    pub fn value(&self) -> Real {
        self.upper.max(&self.lower).max(&Real::zero())
    }
}

/// Integer cofactors with A·F + B·G = R·X^{2d−1} and A'·F + B'·G = R·Y^{2d−1},
/// where R is the determinant of the Sylvester system.
pub fn bezout_cofactors(f: &P1Map) -> (BigInt, [Vec<BigInt>; 4]) {
    let d = f.degree();
    let n = 2 * d;
    let mut s = Matrix::<Rat>::zeros(n, n);
    for k in 0..n {
        for j in 0..d {
            if k >= j && k - j <= d {
                s.set(k, j, Rat::from_integer(f.f_coeffs()[k - j].clone()));
                s.set(k, d + j, Rat::from_integer(f.g_coeffs()[k - j].clone()));
            }
        }
    }
    let det = s.determinant();
    let inv = s.inverse().expect("morphism has nonzero resultant");
    let column = |c: usize| -> (Vec<BigInt>, Vec<BigInt>) {
        let sol: Vec<BigInt> = (0..n)
            .map(|r| {
                let v = inv.get(r, c).clone() * det.clone();
                assert!(v.is_integer(), "adjugate entries are integers");
                v.to_integer()
            })
            .collect();
        (sol[..d].to_vec(), sol[d..].to_vec())
    };
    let (a, b) = column(0);
    let (a2, b2) = column(n - 1);
    (det.to_integer(), [a, b, a2, b2])
}

/// The constant C with |h(f(P)) − d·h(P)| ≤ C on P¹(Q).
///
/// Upper side: each of F, G has d+1 terms, so max(|F|,|G|) ≤ (d+1)·c·|P|^d.
/// Lower side: for primitive P, gcd(F(P), G(P)) divides R, and the cofactor
/// identities give |R|·|P|^{2d−1} ≤ 2d·a·|P|^{d−1}·max(|F(P)|,|G(P)|).
pub fn height_constant(f: &P1Map) -> Result<HeightConstant> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::precondition("height constant needs degree at least 2"));
    }
    let c = f.all_coeffs().map(|x| x.abs()).max().expect("nonempty");
    let upper = Real::ln_bigint(&(c * BigInt::from(d + 1)));
    let (_, cofactors) = bezout_cofactors(f);
    let a = cofactors.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero).max(BigInt::one());
    let lower = Real::ln_bigint(&(&a * BigInt::from(2 * d)));
    Ok(HeightConstant { upper, lower, cofactor_bound: a })
}

/// h(f(P)) − d·h(P), exactly up to logarithm rounding.
pub fn height_defect(f: &P1Map, x: &ProjPoint) -> Result<Real> {
    let fx = f.apply(x)?;
    Ok(&weil_height(&fx) - &weil_height(x).mul_bigint(&BigInt::from(f.degree())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::p1::intform;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(c: &[i64]) -> P1Map {
        P1Map::polynomial_ints(c).unwrap()
    }

    #[test]
    fn weil_height_examples() {
        let l3 = 3f64.ln();
        assert!((weil_height(&ProjPoint::from_ints(&[3, 2]).unwrap()).to_f64() - l3).abs() < 1e-15);
        let x = ProjPoint::new(&[Rat::new(4.into(), 6.into()), Rat::one()]).unwrap();
        assert!((weil_height(&x).to_f64() - l3).abs() < 1e-15);
        assert_eq!(weil_height(&ProjPoint::infinity()).to_f64(), 0.0);
    }

    #[test]
    fn cofactor_identities_hold() {
        for f in [poly(&[0, 0, 1]), poly(&[-1, 0, 1]), poly(&[0, 0, 2]), P1Map::from_ints(&[1, 0, 3, 1], &[0, 2, 0, 5]).unwrap()] {
            let (r, [a, b, a2, b2]) = bezout_cofactors(&f);
            let d = f.degree();
            let lhs = |p: &[BigInt], q: &[BigInt]| {
                let mut acc = intform::mul(p, f.f_coeffs());
                let gb = intform::mul(q, f.g_coeffs());
                for (x, y) in acc.iter_mut().zip(gb) {
                    *x += y;
                }
                acc
            };
            let mut ex = vec![BigInt::zero(); 2 * d];
            ex[0] = r.clone();
            let mut ey = vec![BigInt::zero(); 2 * d];
            ey[2 * d - 1] = r.clone();
            assert_eq!(lhs(&a, &b), ex);
            assert_eq!(lhs(&a2, &b2), ey);
            assert_eq!(r.abs(), f.resultant().abs());
        }
    }

    fn random_point(rng: &mut ChaCha8Rng, bound: i64) -> ProjPoint {
        loop {
            let p = rng.gen_range(-bound..=bound);
            let q = rng.gen_range(0..=bound);
            if let Ok(x) = ProjPoint::from_ints(&[p, q]) {
                return x;
            }
        }
    }

    #[test]
    fn height_constant_is_sound_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in [poly(&[0, 0, 1]), poly(&[-1, 0, 1]), poly(&[0, 0, 2]), P1Map::from_ints(&[1, 0, 3], &[0, 2, 5]).unwrap()] {
            let c = height_constant(&f).unwrap().value();
            let mut worst = 0f64;
            for _ in 0..2000 {
                let x = random_point(&mut rng, 1_000_000);
                let defect = height_defect(&f, &x).unwrap();
                assert!(defect.upper() <= c.upper() && -defect.lower() <= c.upper());
                worst = worst.max(defect.to_f64().abs());
            }
            assert!(worst <= c.to_f64());
        }
        // x² is exact: the defect vanishes on primitive pairs
        let sq = poly(&[0, 0, 1]);
        for _ in 0..200 {
            let x = random_point(&mut rng, 1000);
            assert!(height_defect(&sq, &x).unwrap().to_f64().abs() < 1e-30);
        }
    }
}
