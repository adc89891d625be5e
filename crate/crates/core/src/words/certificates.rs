//! Witnesses that two maps have different preperiodic points, and height
//! certificates that a point has an infinite orbit under a semigroup.

use num_bigint::BigInt;
use serde::Serialize;

use super::{evaluate, Word};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::heights::canonical::canonical_height;
use crate::heights::portrait::{points_of_height, rational_portrait, Portrait};
use crate::heights::preper::{is_preperiodic, Preperiodicity};
use crate::heights::real::Real;
use crate::heights::{height_constant, HeightEstimate};
use crate::maps::p1::P1Map;
use crate::maps::point::{canonical_cmp, ProjPoint};

/// Candidate height when both maps have degree one and no portrait exists.
const LINEAR_SEARCH_HEIGHT: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferenceKind {
    /// Preperiodic for exactly one of the maps.
    Membership,
    /// Preperiodic for both with different (tail, cycle) data; the rational
    /// preperiodic sets coincide, so this is not a Prep difference.
    OrbitShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceWitness {
    pub point: ProjPoint,
    pub kind: DifferenceKind,
    /// (tail, cycle) under each map, when preperiodic.
    pub under_first: Option<(usize, usize)>,
    pub under_second: Option<(usize, usize)>,
}

fn shape(p: &Preperiodicity) -> Option<(usize, usize)> {
    match p {
        Preperiodicity::Preperiodic { tail, cycle, .. } => Some((*tail, *cycle)),
        Preperiodicity::Wandering { .. } => None,
    }
}

/// The least rational point (in the canonical order) that is preperiodic for
/// exactly one of f and g. Candidates are the complete portraits of the
/// maps of degree ≥ 2; for two degree-one maps, points of height ≤ 16.
///
/// When no such point exists the least common vertex whose orbit shape
/// differs is returned with kind `OrbitShape`. `None` is not a proof that
/// the preperiodic sets agree beyond the rational search.
pub fn prep_difference_witness(f: &P1Map, g: &P1Map, caps: &Caps) -> Result<Option<DifferenceWitness>> {
    let mut candidates: Vec<ProjPoint> = Vec::new();
    let portraits: Vec<Option<Portrait>> =
        [f, g].iter().map(|m| if m.degree() >= 2 { rational_portrait(m, caps).map(Some) } else { Ok(None) }).collect::<Result<_>>()?;
    for p in portraits.iter().flatten() {
        candidates.extend(p.vertices.iter().cloned());
    }
    if portraits.iter().all(Option::is_none) {
        for h in 1..=LINEAR_SEARCH_HEIGHT {
            candidates.extend(points_of_height(h));
        }
    }
    candidates.sort_by(canonical_cmp);
    candidates.dedup();
    let mut shape_witness = None;
    for x in candidates {
        let a = shape(&is_preperiodic(f, &x, caps)?);
        let b = shape(&is_preperiodic(g, &x, caps)?);
        if a.is_some() != b.is_some() {
            return Ok(Some(DifferenceWitness { point: x, kind: DifferenceKind::Membership, under_first: a, under_second: b }));
        }
        if a != b && shape_witness.is_none() {
            shape_witness = Some(DifferenceWitness { point: x, kind: DifferenceKind::OrbitShape, under_first: a, under_second: b });
        }
    }
    Ok(shape_witness)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCertificate {
    /// The word f^n∘g, letters 0 = f and 1 = g.
    pub n: u32,
    pub word: String,
    /// ĥ_f(g(x)).
    pub height: HeightEstimate,
    /// d^n·(ĥ − error) is certified above this threshold C + 1.
    pub threshold: Real,
}

impl OrbitCertificate {
    pub fn word(&self) -> Word {
        let mut letters = vec![0; self.n as usize];
        letters.push(1);
        Word::new(letters)
    }
}

/// n with d^n·ĥ_f(gx) > C + 1, certifying that x is not preperiodic for
/// f^n∘g, so the orbit of x under the semigroup ⟨f, g⟩ is infinite.
/// `None` when g(x) is preperiodic for f.
pub fn unbounded_orbit_certificate(f: &P1Map, g: &P1Map, x: &ProjPoint, caps: &Caps) -> Result<Option<OrbitCertificate>> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::precondition("the growth certificate needs deg f >= 2"));
    }
    let gx = g.apply(x)?;
    if is_preperiodic(f, &gx, caps)?.is_preperiodic() {
        return Ok(None);
    }
    // ĥ_f(gx) > 0 is now known; refine until its lower bound is positive
    let mut eps = 1e-3;
    let height = loop {
        let h = canonical_height(f, &gx, eps, caps)?;
        let low = &h.value - &h.error_bound;
        if low.lower() > 0.0 {
            break h;
        }
        eps /= 1e3;
    };
    let threshold = &height_constant(f)?.value() + &Real::from_i64(1);
    let low = &height.value - &height.error_bound;
    let dd = BigInt::from(d);
    let mut n = 0u32;
    while !low.mul_bigint(&dd.pow(n)).certainly_gt(&threshold) {
        n += 1;
    }
    let word = format!("{}g", "f".repeat(n as usize));
    Ok(Some(OrbitCertificate { n, word, height, threshold }))
}

/// The map f^n∘g named by a certificate.
pub fn certificate_map(f: &P1Map, g: &P1Map, cert: &OrbitCertificate, caps: &Caps) -> Result<P1Map> {
    evaluate(&[f.clone(), g.clone()], &cert.word(), caps)
}
