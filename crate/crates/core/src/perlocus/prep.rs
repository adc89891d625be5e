//! Prep_{m,n} loci of P¹ morphisms as binary forms, and their rational points.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::binform::BinForm;
use crate::exact::factor::rational_roots;
use crate::exact::rat::Rat;
use crate::maps::p1::{intform, P1Map};
use crate::maps::point::{canonical_cmp, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrepLocus {
    /// f^m = f^{m+n} identically.
    WholeLine,
    Form(BinForm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrepForm {
    pub m: u32,
    pub n: u32,
    pub locus: PrepLocus,
}

impl PrepForm {
    /// Whether the point satisfies f^m(x) = f^{m+n}(x).
    pub fn contains(&self, x: &ProjPoint) -> bool {
        match &self.locus {
            PrepLocus::WholeLine => true,
            PrepLocus::Form(form) => {
                let ints = form.integer_coeffs().expect("normalized");
                intform::eval(&ints, &x.coords()[0], &x.coords()[1]).is_zero()
            }
        }
    }

    /// Rational points of the locus (all of P¹(Q) is not listable: `None`).
    pub fn rational_points(&self) -> Option<Vec<ProjPoint>> {
        match &self.locus {
            PrepLocus::WholeLine => None,
            PrepLocus::Form(form) => Some(form_rational_roots(form)),
        }
    }
}

/// Rational roots in P¹ of a nonzero binary form, in canonical order.
pub fn form_rational_roots(form: &BinForm) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    if form.y_multiplicity() > 0 {
        out.push(ProjPoint::infinity());
    }
    let affine = form.dehomogenize();
    if !affine.is_zero() && affine.deg() >= 1 {
        out.extend(rational_roots(&affine).iter().map(ProjPoint::affine));
    }
    out.sort_by(canonical_cmp);
    out
}

/// The form F_{m+n}·G_m − F_m·G_{m+n} cutting out Prep_{m,n}(f).
pub fn prep_form(f: &P1Map, m: u32, n: u32, caps: &Caps) -> Result<PrepForm> {
    if n == 0 {
        return Err(Error::input("prep_form needs n >= 1"));
    }
    let fm = if m == 0 { P1Map::identity() } else { f.iterate(m, caps)? };
    let fmn = f.iterate(m + n, caps)?;
    let a = intform::mul(fmn.f_coeffs(), fm.g_coeffs());
    let b = intform::mul(fm.f_coeffs(), fmn.g_coeffs());
    let diff: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    let locus = if diff.iter().all(Zero::is_zero) {
        PrepLocus::WholeLine
    } else {
        PrepLocus::Form(BinForm::from_bigints(&diff).normalized())
    };
    Ok(PrepForm { m, n, locus })
}

/// Exact period of a periodic point, searching up to `max_steps` steps.
pub fn exact_period(f: &P1Map, x: &ProjPoint, max_steps: u64) -> Option<u64> {
    let mut y = f.apply(x).ok()?;
    for k in 1..=max_steps {
        if &y == x {
            return Some(k);
        }
        y = f.apply(&y).ok()?;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicPoint {
    pub point: ProjPoint,
    pub period: u64,
}

/// Rational periodic points of period ≤ n_max, each with its exact minimal period.
pub fn rational_periodic_points(f: &P1Map, n_max: u32, caps: &Caps) -> Result<Vec<PeriodicPoint>> {
    if f.degree() < 2 {
        return Err(Error::precondition("rational_periodic_points needs degree at least 2"));
    }
    let mut points: Vec<ProjPoint> = Vec::new();
    for n in 1..=n_max {
        let form = prep_form(f, 0, n, caps)?;
        for p in form.rational_points().expect("degree >= 2 maps are not torsion") {
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    points.sort_by(canonical_cmp);
    let cycle_cap = n_max as u64 * (f.degree() as u64).saturating_pow(n_max);
    points
        .into_iter()
        .map(|p| {
            let period = exact_period(f, &p, cycle_cap).ok_or_else(|| Error::resource("cycle cap reached"))?;
            Ok(PeriodicPoint { point: p, period })
        })
        .collect()
}

/// f^m(x) for x in Prep_{m,n}(f); the image is checked to lie in Prep_{0,n}(f).
pub fn prep_project(f: &P1Map, x: &ProjPoint, m: u32, n: u32, caps: &Caps) -> Result<ProjPoint> {
    let locus = prep_form(f, m, n, caps)?;
    if !locus.contains(x) {
        return Err(Error::input(format!("{} is not in Prep_{{{m},{n}}}", x.p1_string())));
    }
    let mut y = x.clone();
    for _ in 0..m {
        y = f.apply(&y)?;
    }
    let periodic = prep_form(f, 0, n, caps)?;
    assert!(periodic.contains(&y), "image of Prep_(m,n) left Prep_(0,n)");
    Ok(y)
}

impl Serialize for PrepForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PrepForm", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        match &self.locus {
            PrepLocus::WholeLine => st.serialize_field("form", "WHOLE_LINE")?,
            // same order as `p1:` text: entry i multiplies X^i Y^(d-i)
            PrepLocus::Form(f) => {
                let entries: Vec<String> = f.coeffs().iter().rev().map(crate::exact::rat::format_rat).collect();
                st.serialize_field("form", &format!("[{}]", entries.join(",")))?
            }
        }
        st.end()
    }
}

/// Convenience for tests and callers holding rationals.
pub fn affine_point(x: i64) -> ProjPoint {
    ProjPoint::affine(&Rat::from_integer(x.into()))
}
