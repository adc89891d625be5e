//! Verifiers for periodic-point statements about groups of linear maps:
//! commuting maps permute Per_n, Per* inside Per for nilpotent groups,
//! common periodic points for solvable groups, and commutator orbits.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use super::series::{group_commutator, series_check, MatrixGroupPresentation, StructureReport};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::alg::{AlgElem, Extension};
use crate::exact::cyclotomic::root_of_unity_orders;
use crate::exact::factor::FactorField;
use crate::exact::field::Field;
use crate::exact::matrix::{subspace_eq, subspace_image, subspace_intersection, Basis, Matrix};
use crate::maps::linear::ProjLinAuto;
use crate::perlocus::eigen::{point_period, projective_order, ratio_polynomial, self_ratio_polynomial};
use crate::perlocus::linear::{eigen_factors, per_locus_linear, per_star_linear, PerComponent};

/// One conjugate packet of isolated periodic points, in printable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PacketSummary {
    pub defining_factor: String,
    pub subspace_basis: Vec<Vec<String>>,
    /// The point itself when the packet is a single F-rational point.
    pub point: Option<Vec<String>>,
}

fn show_vec<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn summarize<F: Field>(c: &PerComponent<F>) -> PacketSummary {
    let mut point = None;
    if c.subspace_basis.len() == 1 {
        let mut v = c.subspace_basis[0].clone();
        F::normalize_line(&mut v);
        point = Some(show_vec(&v));
    }
    PacketSummary {
        defining_factor: c.defining_factor.to_string(),
        subspace_basis: c.subspace_basis.iter().map(|v| show_vec(v)).collect(),
        point,
    }
}

/// Period under `h` of a point of a one-dimensional-eigenspace packet of
/// `g`: one representative eigenvector over F[t]/(q) is tested; its
/// conjugates have the same period.
pub fn packet_period<F: Field>(g: &ProjLinAuto<F>, c: &PerComponent<F>, h: &ProjLinAuto<F>) -> Option<u64> {
    let q = &c.defining_factor;
    if q.deg() == 1 {
        let v = &c.subspace_basis[0];
        return point_period(h.matrix(), v);
    }
    let ext = Extension::new(q);
    let lift = |m: &Matrix<F>| m.map(|x| ext.embed(x));
    let shifted = lift(g.matrix()).sub(&Matrix::<AlgElem<F>>::identity(g.size()).scale(&ext.generator()));
    let kernel = shifted.kernel();
    let v = kernel.first()?;
    point_period(&lift(h.matrix()), v)
}

/// Every basis vector has last coordinate 0, so the packet misses the affine chart.
pub fn lies_at_infinity<F: Field>(c: &PerComponent<F>) -> bool {
    c.subspace_basis.iter().all(|v| v.last().is_some_and(|x| x.is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommuteReport {
    pub holds: bool,
    pub n: u64,
    pub components: Vec<String>,
    /// Component i of Per_n(h) is mapped onto component `permutation[i]` by g.
    pub permutation: Vec<usize>,
}

pub fn commute_same_verify<F: FactorField>(g: &ProjLinAuto<F>, h: &ProjLinAuto<F>, n: u64) -> Result<CommuteReport> {
    if !g.commutes_with(h) {
        return Err(Error::precondition("g and h do not commute"));
    }
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let locus = per_locus_linear(h, n)?;
    let mut permutation = Vec::new();
    for c in &locus.components {
        let image = subspace_image(g.matrix(), &c.subspace_basis);
        match locus.components.iter().position(|d| subspace_eq(&image, &d.subspace_basis)) {
            Some(j) => permutation.push(j),
            None => {
                return Ok(CommuteReport { holds: false, n, components: component_names(&locus.components), permutation });
            }
        }
    }
    let mut sorted = permutation.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let holds = sorted.len() == permutation.len();
    Ok(CommuteReport { holds, n, components: component_names(&locus.components), permutation })
}

fn component_names<F: Field>(cs: &[PerComponent<F>]) -> Vec<String> {
    cs.iter().map(|c| c.defining_factor.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum NilSameStatus {
    Pass,
    Violation { witness: PacketSummary },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilSameReport {
    pub result: NilSameStatus,
    pub per_star: Vec<PacketSummary>,
    /// Periods under g₂ of the Per*(g₁) packets, `None` when not periodic.
    pub periods_under_second: Vec<Option<u64>>,
    pub structure: StructureReport,
    /// True when the context shows no nilpotent evidence, so the
    /// inclusion is not predicted and the result is an observation only.
    pub observational: bool,
}

/// Checks Per*(g₁) ⊆ Per(g₂), packet by packet.
pub fn nil_same_verify<F: FactorField>(
    g1: &ProjLinAuto<F>,
    g2: &ProjLinAuto<F>,
    context: &MatrixGroupPresentation<F>,
    caps: &Caps,
) -> Result<NilSameReport> {
    let structure = series_check(context, 3, 2, caps)?;
    let per_star: Vec<PerComponent<F>> =
        per_star_linear(g1)?.into_iter().filter(|c| !(context.affine && lies_at_infinity(c))).collect();
    let periods: Vec<Option<u64>> = per_star.iter().map(|c| packet_period(g1, c, g2)).collect();
    let result = match periods.iter().position(Option::is_none) {
        Some(i) => NilSameStatus::Violation { witness: summarize(&per_star[i]) },
        None => NilSameStatus::Pass,
    };
    Ok(NilSameReport {
        result,
        per_star: per_star.iter().map(summarize).collect(),
        periods_under_second: periods,
        observational: !structure.nilpotent_up_to,
        structure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLocus {
    pub generator: String,
    /// Linear equations of each positive-dimensional component of the
    /// fixed locus, in the coordinates x0, x1, … (affine: x, y, … and 1).
    pub equations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisFailure {
    pub word: String,
    pub matrix: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvableReport {
    pub word_length: usize,
    pub words_checked: usize,
    pub torsion_words: usize,
    pub hypothesis_holds: bool,
    pub failure: Option<HypothesisFailure>,
    pub fixed_loci: Vec<FixedLocus>,
    /// A packet of Per*(first generator) periodic under every generator.
    pub common_packet: Option<PacketSummary>,
    /// A point periodic under every generator, found by intersecting
    /// periodic loci (F-rational, and in the chart for affine groups).
    pub common_periodic_point: Option<Vec<String>>,
    pub affine_chart: bool,
}

fn equation_strings<F: Field>(basis: &Basis<F>, affine: bool) -> Vec<String> {
    let size = basis.first().map_or(0, Vec::len);
    let annihilator = Matrix::from_rows(basis.clone()).kernel();
    let names: Vec<String> = if affine {
        let letters = ["x", "y", "z", "w"];
        (0..size).map(|i| if i + 1 == size { "1".to_string() } else { letters.get(i).map_or(format!("x{i}"), |s| s.to_string()) }).collect()
    } else {
        (0..size).map(|i| format!("x{i}")).collect()
    };
    annihilator
        .iter()
        .map(|row| {
            let mut row = row.clone();
            F::normalize_line(&mut row);
            let terms: Vec<String> = row
                .iter()
                .zip(&names)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, n)| if c.is_one() { n.clone() } else if n == "1" { c.to_string() } else { format!("({c})*{n}") })
                .collect();
            format!("{} = 0", terms.join(" + "))
        })
        .collect()
}

/// Subspaces whose nonzero vectors are the periodic points of g: the
/// eigenspaces of g^N where N is the lcm of the root-of-unity ratio orders.
fn periodic_subspaces<F: FactorField>(g: &ProjLinAuto<F>) -> Result<Vec<Basis<F>>> {
    let m = g.matrix();
    let factors = eigen_factors(m)?;
    let degree = F::field_degree(m.entries());
    let mut n = 1u64;
    for q in &factors {
        for r in &factors {
            let ratios = if q == r { self_ratio_polynomial(q) } else { ratio_polynomial(q, r) };
            for k in root_of_unity_orders(&ratios, degree) {
                n = n.lcm(&k);
            }
        }
    }
    Ok(per_locus_linear(g, n)?.components.into_iter().map(|c| c.subspace_basis).collect())
}

/// Searches for a common periodic point; checks the Per* hypothesis on
/// every nontorsion element with a word of length ≤ `word_length`.
pub fn solvable_common_point<F: FactorField>(
    group: &MatrixGroupPresentation<F>,
    word_length: usize,
    caps: &Caps,
) -> Result<SolvableReport> {
    let elements = group.words(word_length, caps)?;
    let mut failure = None;
    let mut torsion_words = 0;
    for e in elements.iter().filter(|e| !e.element.is_identity()) {
        if projective_order(e.element.matrix()).is_some() {
            torsion_words += 1;
            continue;
        }
        let star: Vec<_> = per_star_linear(&e.element)?.into_iter().filter(|c| !(group.affine && lies_at_infinity(c))).collect();
        if star.is_empty() {
            let reason = if group.affine { "nontorsion with Per* empty in the affine chart" } else { "nontorsion with Per* empty" };
            failure = Some(HypothesisFailure { word: e.word.clone(), matrix: e.element.to_string(), reason: reason.to_string() });
            break;
        }
    }
    let fixed_loci = group
        .generators
        .iter()
        .zip(&group.names)
        .map(|(g, name)| {
            let locus = per_locus_linear(g, 1)?;
            let equations = locus
                .components
                .iter()
                .filter(|c| !c.zero_dimensional)
                .map(|c| equation_strings(&c.subspace_basis, group.affine))
                .collect();
            Ok(FixedLocus { generator: name.clone(), equations })
        })
        .collect::<Result<Vec<_>>>()?;
    let first = &group.generators[0];
    let mut common_packet = None;
    if failure.is_none() {
        for c in per_star_linear(first)? {
            if group.affine && lies_at_infinity(&c) {
                continue;
            }
            if group.generators.iter().all(|h| packet_period(first, &c, h).is_some()) {
                common_packet = Some(summarize(&c));
                break;
            }
        }
    }
    let common_periodic_point = common_rational_point(group)?;
    Ok(SolvableReport {
        word_length,
        words_checked: elements.len() - 1,
        torsion_words,
        hypothesis_holds: failure.is_none(),
        failure,
        fixed_loci,
        common_packet,
        common_periodic_point,
        affine_chart: group.affine,
    })
}

/// Intersects the periodic subspaces of all generators, component by
/// component, and returns the first basis vector (or affine combination)
/// verified periodic under every generator.
fn common_rational_point<F: FactorField>(group: &MatrixGroupPresentation<F>) -> Result<Option<Vec<String>>> {
    let size = group.size();
    let loci: Vec<Vec<Basis<F>>> = group.generators.iter().map(periodic_subspaces).collect::<Result<_>>()?;
    let mut partial: Vec<Basis<F>> = loci[0].clone();
    for l in &loci[1..] {
        let mut next = Vec::new();
        for a in &partial {
            for b in l {
                let i = subspace_intersection(a, b, size);
                if !i.is_empty() {
                    next.push(i);
                }
            }
        }
        partial = next;
    }
    for basis in partial {
        let mut candidates: Vec<Vec<F>> = basis.clone();
        if group.affine {
            // a vector with nonzero last coordinate exists iff some basis vector has one
            candidates.retain(|v| v.last().is_some_and(|x| !x.is_zero()));
        }
        for v in candidates {
            if group.generators.iter().all(|g| point_period(g.matrix(), &v).is_some()) {
                let mut v = v;
                F::normalize_line(&mut v);
                return Ok(Some(show_vec(&v)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorOrbitReport {
    pub holds: bool,
    /// Size of the orbit of x under the commutators of words of length ≤ 2.
    pub commutator_orbit_size: usize,
    pub period_of_x: u64,
    pub image: Vec<String>,
    pub period_of_image: Option<u64>,
}

/// Checks g·x ∈ Per(h) given x ∈ Per(h) and a finite A'-orbit of x.
pub fn commutator_orbit_check<F: FactorField>(
    group: &MatrixGroupPresentation<F>,
    g: &ProjLinAuto<F>,
    h: &ProjLinAuto<F>,
    x: &[F],
    caps: &Caps,
) -> Result<CommutatorOrbitReport> {
    if x.len() != group.size() || x.iter().all(|c| c.is_zero()) {
        return Err(Error::input("point does not match the group's dimension"));
    }
    let period_of_x = point_period(h.matrix(), x).ok_or_else(|| Error::precondition("x is not periodic under h"))?;
    let words = group.words(2, caps)?;
    let mut commutators: Vec<ProjLinAuto<F>> = Vec::new();
    for a in &words {
        for b in &words {
            let c = group_commutator(&a.element, &b.element);
            if !c.is_identity() && !commutators.contains(&c) {
                commutators.push(c);
            }
        }
    }
    let mut start = x.to_vec();
    F::normalize_line(&mut start);
    let mut seen: HashSet<Vec<F>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(y) = queue.pop_front() {
        for c in &commutators {
            for z in [c.apply(&y), c.inverse().apply(&y)] {
                if seen.insert(z.clone()) {
                    if seen.len() > caps.orbit_steps {
                        return Err(Error::precondition("the commutator orbit of x is not finite within the orbit cap"));
                    }
                    queue.push_back(z);
                }
            }
        }
    }
    let image = g.apply(x);
    let period_of_image = point_period(h.matrix(), &image);
    Ok(CommutatorOrbitReport {
        holds: period_of_image.is_some(),
        commutator_orbit_size: seen.len(),
        period_of_x,
        image: show_vec(&image),
        period_of_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::quad::QuadElem;
    use crate::exact::rat::{rat, Rat};
    use crate::maps::linear::AffineAuto;

    fn mat(rows: &[&[i64]]) -> ProjLinAuto<Rat> {
        ProjLinAuto::new(Matrix::from_int_rows(rows)).unwrap()
    }

    fn diag(d: &[i64]) -> ProjLinAuto<Rat> {
        ProjLinAuto::new(Matrix::diagonal(&d.iter().map(|&x| rat(x)).collect::<Vec<_>>())).unwrap()
    }

    fn affine_1d(a: i64, b: i64) -> ProjLinAuto<Rat> {
        AffineAuto::new(Matrix::from_int_rows(&[&[a]]), vec![rat(b)]).unwrap().embed()
    }

    #[test]
    fn commute_same_examples() {
        let r = commute_same_verify(&diag(&[1, 5, 7]), &diag(&[1, 2, 3]), 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.permutation, vec![0, 1, 2]);
        let r = commute_same_verify(&mat(&[&[0, 1], &[1, 0]]), &diag(&[2, 2]), 1).unwrap();
        assert!(r.holds && r.components.len() == 1);
        let u = mat(&[&[1, 1], &[0, 1]]);
        assert!(commute_same_verify(&u, &u, 1).unwrap().holds);
        assert!(commute_same_verify(&u, &diag(&[1, 2]), 1).is_err());
    }

    #[test]
    fn nil_same_examples() {
        let caps = Caps::default();
        let (g1, g2) = (diag(&[1, 2, 3]), diag(&[1, 5, 7]));
        let ctx = MatrixGroupPresentation::new(vec![g1.clone(), g2.clone()]).unwrap();
        let r = nil_same_verify(&g1, &g2, &ctx, &caps).unwrap();
        assert_eq!(r.result, NilSameStatus::Pass);
        assert_eq!(r.per_star.len(), 3);
        assert!(!r.observational);

        let (neg, shift) = (affine_1d(-1, 0), affine_1d(1, 1));
        let ctx = MatrixGroupPresentation::affine(vec![neg.clone(), shift.clone()]).unwrap();
        let r = nil_same_verify(&neg, &shift, &ctx, &caps).unwrap();
        match &r.result {
            NilSameStatus::Violation { witness } => assert_eq!(witness.point, Some(vec!["0".to_string(), "1".to_string()])),
            other => panic!("{other:?}"),
        }
        assert!(r.observational);
        assert_eq!(nil_same_verify(&g1, &g1, &ctx_of(&g1), &caps).unwrap().result, NilSameStatus::Pass);
    }

    fn ctx_of(g: &ProjLinAuto<Rat>) -> MatrixGroupPresentation<Rat> {
        MatrixGroupPresentation::new(vec![g.clone()]).unwrap()
    }

    fn solv_ex() -> MatrixGroupPresentation<QuadElem> {
        let q = |a: i64, b: i64| QuadElem::new(rat(a), rat(b), 2).unwrap();
        let f = |a: i64, b: i64| {
            let lin = Matrix::from_rows(vec![vec![q(1, 0), q(a, b)], vec![q(0, 0), q(1, 0)]]);
            AffineAuto::new(lin, vec![q(a, 0), q(0, 0)]).unwrap().embed()
        };
        MatrixGroupPresentation::affine(vec![f(1, 0), f(0, 1)]).unwrap()
    }

    #[test]
    fn solvable_examples() {
        let caps = Caps::default();
        let r = solvable_common_point(&solv_ex(), 2, &caps).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.failure.as_ref().unwrap().word, "f");
        assert_eq!(r.fixed_loci[0].equations, vec![vec!["y + 1 = 0".to_string()]]);
        assert_eq!(r.fixed_loci[1].equations, vec![vec!["y = 0".to_string()]]);
        assert_eq!(r.common_periodic_point, None);

        let ab = MatrixGroupPresentation::new(vec![diag(&[1, 2, 3]), diag(&[1, 5, 7])]).unwrap();
        let r = solvable_common_point(&ab, 2, &caps).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.common_packet.unwrap().point, Some(vec!["1".to_string(), "0".to_string(), "0".to_string()]));
        assert!(r.common_periodic_point.is_some());

        let rot = MatrixGroupPresentation::new(vec![mat(&[&[0, -1], &[1, 0]])]).unwrap();
        let r = solvable_common_point(&rot, 3, &caps).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.torsion_words, r.words_checked);
        assert_eq!(r.common_packet.unwrap().defining_factor, "t^2 + 1");
    }

    #[test]
    fn commutator_orbit_examples() {
        let caps = Caps::default();
        let (neg, swap) = (diag(&[-1, 1]), mat(&[&[0, 1], &[1, 0]]));
        let a = MatrixGroupPresentation::new(vec![neg.clone(), swap.clone()]).unwrap();
        let one = [rat(1), rat(1)];
        let r = commutator_orbit_check(&a, &neg, &swap, &one, &caps).unwrap();
        assert!(r.holds);
        assert_eq!(r.period_of_image, Some(1));

        let u = mat(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let v = mat(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
        let c = group_commutator(&u, &v);
        let h = MatrixGroupPresentation::new(vec![u.clone(), v]).unwrap();
        let e1 = [rat(1), rat(0), rat(0)];
        assert!(commutator_orbit_check(&h, &u, &c, &e1, &caps).unwrap().holds);
        assert!(commutator_orbit_check(&h, &u, &u, &[rat(0), rat(1), rat(0)], &caps).is_err());
    }
}
