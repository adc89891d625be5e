//! One function per subcommand, each returning the JSON document to print.

use std::collections::BTreeSet;

use prepdyn::arcs::dynamics::{period_bound_p1, preimage_depth_bound};
use prepdyn::arcs::{
    arc_linearization, burnside_orbit, charp_exponent_check, in_arc_subgroup, induced_dynamics, zp_period_detect, CharpMode,
    ResiduePoint,
};
use prepdyn::exact::factor::FactorField;
use prepdyn::exact::matrix::Matrix;
use prepdyn::exact::quad::QuadElem;
use prepdyn::exact::rat::{rat, Rat};
use prepdyn::groups::verify::lies_at_infinity;
use prepdyn::groups::{
    commutator_orbit_check, commute_same_verify, nil_same_verify, series_check, solvable_common_point, MatrixGroupPresentation,
};
use prepdyn::heights::{canonical_height, is_preperiodic, rational_portrait, weil_height};
use prepdyn::maps::text::{format_mat, format_p1, format_quad_mat};
use prepdyn::maps::{parse_map_spec, AffineAuto, MapSpec, P1Map, ProjLinAuto, ProjPoint};
use prepdyn::perlocus::eigen::point_period;
use prepdyn::perlocus::{per_locus_linear, per_star_linear, per_star_star_linear, prep_form, rational_periodic_points};
use prepdyn::words::relations::{count_distinct_maps_unpruned, relation_search_named, verify_relation};
use prepdyn::words::{default_names, evaluate, unbounded_orbit_certificate, RelationStatus};
use prepdyn::{Caps, Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Check, Command};

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

/// Adds `extra` to the top level of an object.
fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn p1_map(text: &str) -> Result<P1Map> {
    match parse_map_spec(text)? {
        MapSpec::P1(f) => Ok(f),
        other => Err(Error::input(format!("expected a p1: map, got {}", other.kind()))),
    }
}

fn linear_map(text: &str) -> Result<MapSpec> {
    match parse_map_spec(text)? {
        MapSpec::P1(_) => Err(Error::input("expected a mat: or aff: map")),
        spec => Ok(spec),
    }
}

fn rational_linear(text: &str) -> Result<ProjLinAuto<Rat>> {
    linear_map(text)?.to_rat_linear().ok_or_else(|| Error::input(format!("{text} has irrational entries")))
}

fn residue_point(text: &str, p: u64) -> Result<ResiduePoint> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let coords = inner
        .split([':', ','])
        .map(|c| c.trim().parse::<i64>().map(|x| x.rem_euclid(p as i64) as u64))
        .collect::<std::result::Result<Vec<u64>, _>>()
        .map_err(|e| Error::input(format!("bad residue point {text}: {e}")))?;
    Ok(ResiduePoint { coords })
}

pub fn run(command: &Command, caps: &Caps) -> Result<Value> {
    match command {
        Command::Perlocus { map, n, m } => perlocus(map, *m, *n, caps),
        Command::Portrait { map } => {
            let f = p1_map(map)?;
            Ok(with(json!({ "map": format_p1(&f) }), to_json(&rational_portrait(&f, caps)?)))
        }
        Command::Chgt { map, point, eps } => {
            let (f, x) = (p1_map(map)?, ProjPoint::parse(point)?);
            let h = canonical_height(&f, &x, *eps, caps)?;
            Ok(json!({ "map": format_p1(&f), "point": x, "canonical_height": h, "weil_height": weil_height(&x) }))
        }
        Command::Preper { map, point } => {
            let (f, x) = (p1_map(map)?, ProjPoint::parse(point)?);
            Ok(with(json!({ "map": format_p1(&f), "point": x }), to_json(&is_preperiodic(&f, &x, caps)?)))
        }
        Command::Relations { gens, max_len, names, audit } => relations(gens, *max_len, names, *audit, caps),
        Command::CertifyUnbounded { f, g, point } => {
            let (f, g, x) = (p1_map(f)?, p1_map(g)?, ProjPoint::parse(point)?);
            let cert = unbounded_orbit_certificate(&f, &g, &x, caps)?;
            Ok(json!({ "f": format_p1(&f), "g": format_p1(&g), "point": x, "orbit_infinite": cert.is_some(), "certificate": cert }))
        }
        Command::Orbit { gens, point, cap } => {
            let gens = gens.iter().map(|g| rational_linear(g)).collect::<Result<Vec<_>>>()?;
            let x = ProjPoint::parse(point)?;
            Ok(to_json(&burnside_orbit(&gens, &x, *cap)?))
        }
        Command::PadicCycles { map, p, s, e0 } => {
            let f = p1_map(map)?;
            let graph = induced_dynamics(&f, *p, *s, caps)?;
            let mut out = with(json!({ "map": format_p1(&f), "cycle_lengths": graph.cycle_lengths() }), to_json(&graph));
            if let Some(e0) = e0 {
                out = with(out, json!({ "period_bound": period_bound_p1(&f, *p, *e0, caps)? }));
            }
            Ok(out)
        }
        Command::PadicPeriod { map, point, p, s_max } => {
            let (f, x) = (p1_map(map)?, ProjPoint::parse(point)?);
            let r = zp_period_detect(&f, &x, *p, *s_max, caps)?;
            Ok(with(json!({ "map": format_p1(&f), "point": x, "divisibility_chain": r.is_divisibility_chain() }), to_json(&r)))
        }
        Command::PreimageBound { map, alpha, gamma, p } => {
            let f = p1_map(map)?;
            let (alpha, gamma) = (ProjPoint::parse(alpha)?, ProjPoint::parse(gamma)?);
            let b = preimage_depth_bound(&f, &alpha, &gamma, *p, caps)?;
            Ok(with(json!({ "map": format_p1(&f), "alpha": alpha, "gamma": gamma }), to_json(&b)))
        }
        Command::ArcTest { map, gamma, p } => {
            let sigma = rational_linear(map)?;
            let gamma = residue_point(gamma, *p)?;
            let data = arc_linearization(&sigma, &gamma, *p)?;
            let member = in_arc_subgroup(&sigma, &gamma, *p)?;
            Ok(with(json!({ "map": format_mat(&sigma), "in_arc_subgroup": member }), to_json(&data)))
        }
        Command::CharpCheck { q, n, sample, seed, .. } => {
            let mode = match sample {
                Some(count) => CharpMode::Sample { count: *count, seed: *seed },
                None => CharpMode::Exhaustive,
            };
            Ok(to_json(&charp_exponent_check(*q, *n, &mode)?))
        }
        Command::GroupVerify { gens, check, depth, word_length, n, point } => {
            group_verify(gens, *check, *depth, *word_length, *n, point.as_deref(), caps)
        }
        Command::Demo => demo(caps),
    }
}

fn linear_loci<F: FactorField>(g: &ProjLinAuto<F>, text: String, n: u32, affine: bool) -> Result<Value> {
    let star = per_star_linear(g)?;
    let mut out = json!({
        "map": text,
        "per_n": per_locus_linear(g, n as u64)?,
        "per_star": star,
        "per_star_star": per_star_star_linear(g)?,
    });
    if affine {
        let chart: Vec<_> = star.into_iter().filter(|c| !lies_at_infinity(c)).collect();
        out = with(out, json!({ "per_star_affine": chart }));
    }
    Ok(out)
}

fn perlocus(map: &str, m: u32, n: u32, caps: &Caps) -> Result<Value> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    match parse_map_spec(map)? {
        MapSpec::P1(f) => {
            let form = prep_form(&f, m, n, caps)?;
            let periodic = if f.degree() >= 2 { Some(rational_periodic_points(&f, n, caps)?) } else { None };
            Ok(json!({
                "map": format_p1(&f),
                "prep_form": form,
                "rational_points": form.rational_points(),
                "rational_periodic_points": periodic,
            }))
        }
        MapSpec::Mat(g) => linear_loci(&g, format_mat(&g), n, false),
        MapSpec::QuadMat(g) => linear_loci(&g, format_quad_mat(&g), n, false),
        spec @ MapSpec::Affine(_) => match spec.to_rat_linear() {
            Some(g) => linear_loci(&g, format_mat(&g), n, true),
            None => {
                let g = spec.to_quad_linear().expect("affine maps are linear");
                linear_loci(&g, format_quad_mat(&g), n, true)
            }
        },
    }
}

fn relations(gens: &[String], max_len: usize, names: &[String], audit: bool, caps: &Caps) -> Result<Value> {
    let maps = gens.iter().map(|g| p1_map(g)).collect::<Result<Vec<_>>>()?;
    let names = if names.is_empty() { default_names(maps.len()) } else { names.to_vec() };
    let report = relation_search_named(&maps, &names, max_len, caps)?;
    let mut out = with(to_json(&report), json!({ "max_len": max_len, "verified": verify_relation(&maps, &report, caps)? }));
    if audit {
        out = with(out, json!({ "audit_distinct_maps": count_distinct_maps_unpruned(&maps, max_len, caps)? }));
    }
    Ok(out)
}

fn radicand(specs: &[MapSpec]) -> Result<Option<i64>> {
    let mut found = BTreeSet::new();
    for s in specs {
        if let Some(g) = s.to_quad_linear() {
            found.extend(g.matrix().entries().iter().filter_map(QuadElem::radicand));
        }
    }
    let mut it = found.into_iter();
    match (it.next(), it.next()) {
        (Some(a), Some(b)) => Err(Error::MixedRadicand(a, b)),
        (d, _) => Ok(d),
    }
}

fn group_verify(
    gens: &[String],
    check: Check,
    depth: usize,
    word_length: usize,
    n: u64,
    point: Option<&str>,
    caps: &Caps,
) -> Result<Value> {
    let specs = gens.iter().map(|g| linear_map(g)).collect::<Result<Vec<_>>>()?;
    let affine = specs.iter().any(|s| matches!(s, MapSpec::Affine(_)));
    if affine && !specs.iter().all(|s| matches!(s, MapSpec::Affine(_))) {
        return Err(Error::input("mix of affine and projective generators"));
    }
    let point = point.map(ProjPoint::parse).transpose()?;
    let d = radicand(&specs)?;
    let out = match d {
        None => {
            let g = specs.iter().map(|s| s.to_rat_linear().expect("rational")).collect();
            verify_in(g, affine, check, depth, word_length, n, point.as_ref(), caps)?
        }
        Some(_) => {
            let g = specs.iter().map(|s| s.to_quad_linear().expect("linear")).collect();
            verify_in(g, affine, check, depth, word_length, n, point.as_ref(), caps)?
        }
    };
    Ok(with(json!({ "check": check, "affine": affine, "radicand": d }), out))
}

#[allow(clippy::too_many_arguments)]
fn verify_in<F: FactorField>(
    gens: Vec<ProjLinAuto<F>>,
    affine: bool,
    check: Check,
    depth: usize,
    word_length: usize,
    n: u64,
    point: Option<&ProjPoint>,
    caps: &Caps,
) -> Result<Value> {
    let group = if affine { MatrixGroupPresentation::affine(gens)? } else { MatrixGroupPresentation::new(gens)? };
    let pair = || -> Result<(&ProjLinAuto<F>, &ProjLinAuto<F>)> {
        match group.generators.as_slice() {
            [g, h, ..] => Ok((g, h)),
            _ => Err(Error::input("this check needs two generators")),
        }
    };
    Ok(match check {
        Check::Series => to_json(&series_check(&group, depth, word_length, caps)?),
        Check::Solvable => to_json(&solvable_common_point(&group, word_length, caps)?),
        Check::NilSame => {
            let (g, h) = pair()?;
            to_json(&nil_same_verify(g, h, &group, caps)?)
        }
        Check::CommuteSame => {
            let (g, h) = pair()?;
            to_json(&commute_same_verify(g, h, n)?)
        }
        Check::CommutatorOrbit => {
            let (g, h) = pair()?;
            let x = point.ok_or_else(|| Error::input("commutator-orbit needs --point"))?;
            let coords: Vec<F> = x.rat_coords().iter().map(F::from_rat).collect();
            to_json(&commutator_orbit_check(&group, g, h, &coords, caps)?)
        }
    })
}

fn affine_line(a: i64, b: i64) -> ProjLinAuto<Rat> {
    AffineAuto::new(Matrix::from_int_rows(&[&[a]]), vec![rat(b)]).expect("invertible").embed()
}

fn nil_example(caps: &Caps) -> Result<Value> {
    let (neg, shift) = (affine_line(-1, 0), affine_line(1, 1));
    let zero = [rat(0), rat(1)];
    let star: Vec<_> = per_star_linear(&neg)?.into_iter().filter(|c| !lies_at_infinity(c)).collect();
    let zero_in_star = star.iter().any(|c| {
        c.subspace_basis.len() == 1 && ProjPoint::new(&c.subspace_basis[0]).ok() == Some(ProjPoint::affine_int(0))
    });
    let group = MatrixGroupPresentation::affine(vec![neg.clone(), shift.clone()])?;
    Ok(json!({
        "f": "x -> -x",
        "g": "x -> x + 1",
        "zero_in_per_star_f": zero_in_star,
        "zero_periodic_under_g": point_period(shift.matrix(), &zero).is_some(),
        "per_star_star_f": per_star_star_linear(&neg)?,
        "nil_same": nil_same_verify(&neg, &shift, &group, caps)?,
    }))
}

fn solvable_example(caps: &Caps) -> Result<Value> {
    let q = |a: i64, b: i64| QuadElem::new(rat(a), rat(b), 2).expect("valid radicand");
    let f = |a: i64, b: i64| {
        let lin = Matrix::from_rows(vec![vec![q(1, 0), q(a, b)], vec![q(0, 0), q(1, 0)]]);
        AffineAuto::new(lin, vec![q(a, 0), q(0, 0)]).expect("invertible").embed()
    };
    let gens = vec![f(1, 0), f(0, 1)];
    let mut affine_per_star = Vec::new();
    for g in &gens {
        affine_per_star.push(per_star_linear(g)?.into_iter().filter(|c| !lies_at_infinity(c)).count());
    }
    let group = MatrixGroupPresentation::affine(gens)?;
    Ok(json!({
        "generators": ["(x, y) -> (x + y + 1, y)", "(x, y) -> (x + sqrt(2) y, y)"],
        "affine_per_star_counts": affine_per_star,
        "solvable": solvable_common_point(&group, 2, caps)?,
    }))
}

fn relation_example(caps: &Caps) -> Result<Value> {
    let gens = vec![P1Map::polynomial_ints(&[0, 2])?, P1Map::polynomial_ints(&[0, 0, 1])?];
    let names = default_names(2);
    let report = relation_search_named(&gens, &names, 3, caps)?;
    let sides = match &report.status {
        RelationStatus::Relation { left, right, .. } => {
            Some([evaluate(&gens, left, caps)?.to_string(), evaluate(&gens, right, caps)?.to_string()])
        }
        RelationStatus::FreeUpTo { .. } => None,
    };
    Ok(with(to_json(&report), json!({ "generator_maps": ["2x", "x^2"], "sides_evaluated": sides })))
}

fn demo(caps: &Caps) -> Result<Value> {
    Ok(json!({
        "nil_example": nil_example(caps)?,
        "solvable_example": solvable_example(caps)?,
        "relation_example": relation_example(caps)?,
    }))
}
