//! Canonical heights ĥ_f(x) = lim h(fⁿ(x))/dⁿ with a rigorous truncation bound.
//!
//! The exact iterates grow like d^N digits, so h(f^N x)/d^N is evaluated
//! through its telescoping sum
//!
//!   h(x) + Σ_{n<N} d^{−(n+1)} · (λ(x_n) − log g_n),
//!
//! where λ(Q) = log max(|F(Q)|, |G(Q)|) − d·log max|Q| is scale invariant
//! (so a truncated real representative of x_n suffices) and g_n is the gcd
//! of F and G at the primitive integer iterate. That gcd divides the
//! resultant R, so it is recovered exactly by tracking x_n modulo a power
//! of R. While the iterates stay small the representative is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use super::real::Real;
use super::{height_constant, weil_height};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::maps::p1::{intform, P1Map};
use crate::maps::point::ProjPoint;

/// Bits kept in the real representative once the exact iterate is too large.
const KEPT_BITS: u64 = 256;
/// Iterates are kept exact below this size.
const EXACT_BITS: u64 = 4096;

#[derive(Clone, Debug, Serialize)]
pub struct HeightEstimate {
    pub value: Real,
    /// C/(d^N·(d−1)), bounding |value − ĥ|.
    pub error_bound: Real,
    pub iterations_used: u32,
}

/// C/(d^N·(d−1)).
fn truncation_bound(c: &Real, d: usize, n: u32) -> Real {
    let denom = BigInt::from(d).pow(n) * BigInt::from(d - 1);
    c.div_bigint(&denom)
}

/// Least N with truncation bound ≤ eps, subject to the iteration cap.
pub fn iterations_for(c: &Real, d: usize, eps: f64, caps: &Caps) -> Result<u32> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::input("eps must be positive"));
    }
    for n in 0..=caps.iterations {
        if truncation_bound(c, d, n).upper() <= eps {
            return Ok(n);
        }
    }
    Err(Error::resource(format!("canonical height needs more than {} iterations for eps = {eps:e}", caps.iterations)))
}

fn shrink(a: &mut BigInt, b: &mut BigInt) {
    let bits = a.bits().max(b.bits());
    if bits > KEPT_BITS {
        let shift = bits - KEPT_BITS;
        *a = &*a >> shift;
        *b = &*b >> shift;
    }
}

/// log max(|x|, |y|) for an integer pair that is not both zero.
fn ln_max(a: &BigInt, b: &BigInt) -> Real {
    Real::ln_bigint(&a.abs().max(b.abs()))
}

/// h(f^N x)/d^N through the telescoping sum, for a fixed N.
pub fn canonical_height_with_iterations(f: &P1Map, x: &ProjPoint, n_iter: u32) -> Result<Real> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::precondition("canonical height needs degree at least 2"));
    }
    if x.dimension() != 1 {
        return Err(Error::input(format!("{x} is not a point of P1")));
    }
    let resultant = f.resultant().abs();
    let track_gcd = !resultant.is_one();
    let mut modulus = resultant.pow(n_iter + 1);
    let (mut u, mut v) = (x.coords()[0].mod_floor(&modulus), x.coords()[1].mod_floor(&modulus));
    let (mut a, mut b) = (x.coords()[0].clone(), x.coords()[1].clone());
    let mut exact = true;
    let mut value = weil_height(x);
    let mut weight = BigInt::one();
    let dd = BigInt::from(d);
    for _ in 0..n_iter {
        weight *= &dd;
        let fa = intform::eval(f.f_coeffs(), &a, &b);
        let ga = intform::eval(f.g_coeffs(), &a, &b);
        let mut term = &ln_max(&fa, &ga) - &ln_max(&a, &b).mul_bigint(&dd);
        if track_gcd {
            let fu = intform::eval(f.f_coeffs(), &u, &v).mod_floor(&modulus);
            let gu = intform::eval(f.g_coeffs(), &u, &v).mod_floor(&modulus);
            let g = fu.gcd(&gu).gcd(&resultant);
            term = &term - &Real::ln_bigint(&g);
            modulus = &modulus / &g;
            u = (fu / &g).mod_floor(&modulus);
            v = (gu / &g).mod_floor(&modulus);
        }
        value = &value + &term.div_bigint(&weight);
        a = fa;
        b = ga;
        if exact {
            let g = a.gcd(&b);
            a /= &g;
            b /= &g;
            if a.bits().max(b.bits()) > EXACT_BITS {
                exact = false;
            }
        }
        if !exact {
            shrink(&mut a, &mut b);
        }
    }
    Ok(value)
}

/// ĥ_f(x) to within eps.
pub fn canonical_height(f: &P1Map, x: &ProjPoint, eps: f64, caps: &Caps) -> Result<HeightEstimate> {
    let c = height_constant(f)?.value();
    let d = f.degree();
    let n = iterations_for(&c, d, eps, caps)?;
    let value = canonical_height_with_iterations(f, x, n)?;
    Ok(HeightEstimate { value, error_bound: truncation_bound(&c, d, n), iterations_used: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(c: &[i64]) -> P1Map {
        P1Map::polynomial_ints(c).unwrap()
    }

    #[test]
    fn examples() {
        let caps = Caps::default();
        let sq = poly(&[0, 0, 1]);
        let two = ProjPoint::affine_int(2);
        for eps in [1e-3, 1e-9, 1e-12] {
            let h = canonical_height(&sq, &two, eps, &caps).unwrap();
            assert!((h.value.to_f64() - 2f64.ln()).abs() < 1e-15);
            assert!(h.error_bound.upper() <= eps);
        }
        assert_eq!(canonical_height(&sq, &ProjPoint::affine_int(1), 1e-9, &caps).unwrap().value.to_f64(), 0.0);
        let h = canonical_height(&poly(&[-1, 0, 1]), &ProjPoint::affine_int(0), 1e-9, &caps).unwrap();
        assert!(h.value.to_f64().abs() <= 1e-9);
        let tight = Caps { iterations: 3, ..Caps::default() };
        assert!(matches!(canonical_height(&sq, &two, 1e-9, &tight), Err(Error::Resource(_))));
    }

    /// The telescoping evaluation agrees with h(f^N x)/d^N on exact iterates.
    #[test]
    fn matches_exact_iterates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let maps = [
            poly(&[0, 0, 2]),
            poly(&[-1, 0, 1]),
            P1Map::from_ints(&[3, 0, 4], &[0, 6, 0]).unwrap(),
            P1Map::from_ints(&[2, 1, 0], &[0, 0, 4]).unwrap(),
        ];
        for f in &maps {
            for _ in 0..10 {
                let x = ProjPoint::from_ints(&[rng.gen_range(-50..=50), rng.gen_range(1..=50)]).unwrap();
                let mut y = x.clone();
                for n in 0..6u32 {
                    let exact = weil_height(&y).div_bigint(&BigInt::from(f.degree()).pow(n));
                    let fast = canonical_height_with_iterations(f, &x, n).unwrap();
                    assert!((exact.to_f64() - fast.to_f64()).abs() < 1e-12, "{f} at {x}, n = {n}");
                    y = f.apply(&y).unwrap();
                }
            }
        }
    }

    #[test]
    fn functional_equation() {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = P1Map::from_ints(&[1, 0, -3], &[0, 2, 1]).unwrap();
        for _ in 0..20 {
            let x = ProjPoint::from_ints(&[rng.gen_range(-99..=99), rng.gen_range(1..=99)]).unwrap();
            let hx = canonical_height(&f, &x, 1e-8, &caps).unwrap();
            let hfx = canonical_height(&f, &f.apply(&x).unwrap(), 1e-8, &caps).unwrap();
            let gap = (hfx.value.to_f64() - 2.0 * hx.value.to_f64()).abs();
            assert!(gap <= hfx.error_bound.upper() + 2.0 * hx.error_bound.upper());
        }
    }
}
