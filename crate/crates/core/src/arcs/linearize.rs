//! Linear part of a projective-linear automorphism on a residue disc.
//!
//! For σ fixing a point γ of Pⁿ(F_p), take the chart at the unit coordinate
//! c of γ and the origin lift γ̃ with coordinates in [0, p). In chart
//! coordinates t_j = X_j/X_c the map is F_σ(t)_j = (σX)_j/(σX)_c, so
//! F_σ(γ̃ + β) ≡ γ̃ + C_σ + L_σ·β to first order, with
//! C_j = w_j/w_c − γ̃_j and L_jk = (σ_jk·w_c − w_j·σ_ck)/w_c² where w = σγ̃.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::residue::{PrimePower, ResiduePoint};
use crate::error::{Error, Result};
use crate::exact::field::primitive_integers;
use crate::exact::rat::Rat;
use crate::maps::linear::ProjLinAuto;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcData {
    pub p: u64,
    pub gamma: ResiduePoint,
    /// Index of the coordinate used to dehomogenize.
    pub chart: usize,
    /// Translation part mod p, indexed by the non-chart coordinates.
    pub c_sigma: Vec<u64>,
    /// Linear part mod p², rows and columns indexed by the non-chart coordinates.
    pub l_sigma: Vec<Vec<u64>>,
}

impl ArcData {
    pub fn is_identity_mod_p2(&self) -> bool {
        self.l_sigma.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == u64::from(i == j)))
    }

    /// L_σ reduced mod p.
    pub fn linear_mod_p(&self) -> Vec<Vec<u64>> {
        self.l_sigma.iter().map(|row| row.iter().map(|x| x % self.p).collect()).collect()
    }
}

/// The primitive integer matrix of σ.
pub fn integer_matrix(sigma: &ProjLinAuto<Rat>) -> Vec<Vec<BigInt>> {
    let size = sigma.size();
    let flat = primitive_integers(sigma.matrix().entries());
    flat.chunks(size).map(<[BigInt]>::to_vec).collect()
}

fn det_mod(m: &[Vec<u64>], ring: &PrimePower) -> u64 {
    // fraction-free elimination mod a prime
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] % ring.p != 0) else { return 0 };
        if pivot != col {
            a.swap(pivot, col);
            det = ring.sub(0, det);
        }
        let inv = ring.inv(a[col][col]).expect("unit pivot");
        det = ring.mul(det, a[col][col]);
        for r in col + 1..n {
            let factor = ring.mul(a[r][col], inv);
            for k in col..n {
                let t = ring.mul(factor, a[col][k]);
                a[r][k] = ring.sub(a[r][k], t);
            }
        }
    }
    det
}

pub fn arc_linearization(sigma: &ProjLinAuto<Rat>, gamma: &ResiduePoint, p: u64) -> Result<ArcData> {
    let size = sigma.size();
    if gamma.coords.len() != size {
        return Err(Error::input(format!("point of dimension {} for a {size}x{size} matrix", gamma.coords.len() - 1)));
    }
    let modp = PrimePower::new(p, 1)?;
    let modp2 = PrimePower::new(p, 2)?;
    if gamma.coords.iter().any(|&x| x >= p) {
        return Err(Error::input("gamma must be given mod p"));
    }
    let gamma = ResiduePoint::normalize(&modp, &gamma.coords).ok_or_else(|| Error::input("gamma is the zero vector"))?;
    let chart = gamma.coords.iter().position(|&x| x == 1).expect("normalized");
    let m = integer_matrix(sigma);
    let mat_p: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| modp.reduce(x)).collect()).collect();
    if det_mod(&mat_p, &modp) == 0 {
        return Err(Error::input(format!("determinant vanishes mod {p}: bad reduction")));
    }
    let lift: Vec<BigInt> = gamma.coords.iter().map(|&x| BigInt::from(x)).collect();
    let w: Vec<BigInt> = m.iter().map(|row| row.iter().zip(&lift).map(|(a, b)| a * b).sum()).collect();
    let image = w.iter().map(|x| modp.reduce(x)).collect::<Vec<_>>();
    if ResiduePoint::normalize(&modp, &image).as_ref() != Some(&gamma) {
        return Err(Error::input(format!("sigma does not fix {gamma} mod {p}")));
    }
    let wc = &w[chart];
    debug_assert!(!(wc % BigInt::from(p)).is_zero());
    let others: Vec<usize> = (0..size).filter(|&j| j != chart).collect();
    let wc_inv_p = modp.inv(modp.reduce(wc)).expect("unit");
    let c_sigma = others
        .iter()
        .map(|&j| modp.sub(modp.mul(modp.reduce(&w[j]), wc_inv_p), gamma.coords[j]))
        .collect();
    let wc2_inv = modp2.inv(modp2.reduce(&(wc * wc))).expect("unit");
    let l_sigma = others
        .iter()
        .map(|&j| {
            others
                .iter()
                .map(|&k| {
                    let num = &m[j][k] * wc - &w[j] * &m[chart][k];
                    modp2.mul(modp2.reduce(&num), wc2_inv)
                })
                .collect()
        })
        .collect();
    Ok(ArcData { p, gamma, chart, c_sigma, l_sigma })
}

/// L_σ ≡ I (mod p²).
pub fn in_arc_subgroup(sigma: &ProjLinAuto<Rat>, gamma: &ResiduePoint, p: u64) -> Result<bool> {
    Ok(arc_linearization(sigma, gamma, p)?.is_identity_mod_p2())
}

/// Product of square matrices mod m.
pub fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], ring: &PrimePower) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| ring.add(acc, ring.mul(a[i][k], b[k][j])))).collect()).collect()
}
