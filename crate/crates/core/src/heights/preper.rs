//! Certified preperiodicity of rational points.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::real::Real;
use super::{height_constant, weil_height};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::matrix::Matrix;
use crate::exact::rat::Rat;
use crate::maps::p1::P1Map;
use crate::maps::point::ProjPoint;
use crate::perlocus::eigen::{point_period, vector_minimal_polynomial};

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WanderingWitness {
    /// h(f^k(x)) > B = C/(d−1) forces ĥ_f(x) > 0.
    Height { iterate: usize, point: ProjPoint, height: Real, bound: Real },
    /// Degree one: the minimal polynomial of the coordinate vector fails
    /// the eigen criterion (repeated roots or a ratio of infinite order).
    Eigen { minimal_polynomial: String },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Preperiodicity {
    /// orbit lists x, f(x), …, up to the first repeat; orbit[tail] starts the cycle.
    Preperiodic { tail: usize, cycle: usize, orbit: Vec<ProjPoint> },
    Wandering { witness: WanderingWitness },
}

impl Preperiodicity {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self, Preperiodicity::Preperiodic { .. })
    }
}

/// The matrix of a degree-one map on column vectors (x, y).
pub fn linear_matrix(f: &P1Map) -> Matrix<Rat> {
    assert_eq!(f.degree(), 1);
    let r = |c: &BigInt| Rat::from_integer(c.clone());
    Matrix::from_rows(vec![f.f_coeffs().iter().map(r).collect(), f.g_coeffs().iter().map(r).collect()])
}

fn orbit_until_repeat(f: &P1Map, x: &ProjPoint, steps: usize, mut stop: impl FnMut(usize, &ProjPoint) -> bool) -> Result<Option<(usize, Vec<ProjPoint>)>> {
    let mut seen: HashMap<ProjPoint, usize> = HashMap::new();
    let mut orbit = Vec::new();
    let mut y = x.clone();
    for k in 0..=steps {
        if let Some(&first) = seen.get(&y) {
            return Ok(Some((first, orbit)));
        }
        if stop(k, &y) {
            return Ok(None);
        }
        seen.insert(y.clone(), k);
        orbit.push(y.clone());
        y = f.apply(&y)?;
    }
    Err(Error::resource(format!("orbit did not close within {steps} steps")))
}

/// Decides whether x is preperiodic for f, with a witness either way.
pub fn is_preperiodic(f: &P1Map, x: &ProjPoint, caps: &Caps) -> Result<Preperiodicity> {
    if x.dimension() != 1 {
        return Err(Error::input(format!("{x} is not a point of P1")));
    }
    if f.degree() == 1 {
        let m = linear_matrix(f);
        let v = x.rat_coords();
        return match point_period(&m, &v) {
            Some(_) => {
                let (tail, orbit) = orbit_until_repeat(f, x, caps.orbit_steps, |_, _| false)?.expect("periodic");
                Ok(Preperiodicity::Preperiodic { tail, cycle: orbit.len() - tail, orbit })
            }
            None => Ok(Preperiodicity::Wandering {
                witness: WanderingWitness::Eigen { minimal_polynomial: vector_minimal_polynomial(&m, &v).to_string() },
            }),
        };
    }
    let d = f.degree();
    let bound = height_constant(f)?.value().div_bigint(&BigInt::from(d - 1));
    let mut witness = None;
    let found = orbit_until_repeat(f, x, caps.orbit_steps, |k, y| {
        let h = weil_height(y);
        if h.certainly_gt(&bound) {
            witness = Some(WanderingWitness::Height { iterate: k, point: y.clone(), height: h, bound: bound.clone() });
            true
        } else {
            false
        }
    })?;
    match found {
        Some((tail, orbit)) => Ok(Preperiodicity::Preperiodic { tail, cycle: orbit.len() - tail, orbit }),
        None => Ok(Preperiodicity::Wandering { witness: witness.expect("stopped on a height witness") }),
    }
}
