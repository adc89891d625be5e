//! Dynamics induced on P¹(Z/p^s) by a map with good reduction: functional
//! graphs, periods by precision, the m·r·p period bound, and the
//! preimage depth bound.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::residue::{reduce_point, residue_count, PrimePower, ResiduePoint, ResidueSystem};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::binform::BinForm;
use crate::exact::intfactor::divisors;
use crate::maps::p1::P1Map;
use crate::maps::point::ProjPoint;
use crate::heights::preper::{is_preperiodic, Preperiodicity};
use crate::perlocus::prep::form_rational_roots;

/// A P¹ morphism reduced modulo p^s.
#[derive(Clone, Debug)]
pub struct ReducedMap {
    pub ring: PrimePower,
    f: Vec<u64>,
    g: Vec<u64>,
}

impl ReducedMap {
    pub fn new(map: &P1Map, p: u64, s: u32) -> Result<Self> {
        let ring = PrimePower::new(p, s)?;
        if !map.has_good_reduction(p) {
            return Err(Error::input(format!("{map} has bad reduction at {p}")));
        }
        let red = |v: &[BigInt]| v.iter().map(|c| ring.reduce(c)).collect();
        Ok(ReducedMap { ring, f: red(map.f_coeffs()), g: red(map.g_coeffs()) })
    }

    fn eval(&self, form: &[u64], x: u64, y: u64) -> u64 {
        let r = &self.ring;
        let mut acc = form[0];
        let mut ypow = 1;
        for &c in &form[1..] {
            ypow = r.mul(ypow, y);
            acc = r.add(r.mul(acc, x), r.mul(c, ypow));
        }
        acc
    }

    pub fn apply(&self, x: &ResiduePoint) -> ResiduePoint {
        let (a, b) = (x.coords[0], x.coords[1]);
        let v = [self.eval(&self.f, a, b), self.eval(&self.g, a, b)];
        ResiduePoint::normalize(&self.ring, &v).expect("good reduction keeps a unit coordinate")
    }
}

/// The functional graph of the induced map on all of P¹(Z/p^s).
#[derive(Clone, Debug, Serialize)]
pub struct FunctionalGraph {
    pub p: u64,
    pub s: u32,
    pub points: Vec<ResiduePoint>,
    pub next: Vec<usize>,
    /// Each cycle starts at its least index; cycles sorted by that index.
    pub cycles: Vec<Vec<usize>>,
    pub tail_lengths: Vec<usize>,
}

impl FunctionalGraph {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn index_of(&self, x: &ResiduePoint) -> Option<usize> {
        self.points.iter().position(|y| y == x)
    }
}

pub fn induced_dynamics(f: &P1Map, p: u64, s: u32, caps: &Caps) -> Result<FunctionalGraph> {
    let reduced = ReducedMap::new(f, p, s)?;
    let system = ResidueSystem::new(1, p, s, caps.enumeration)?;
    let index: HashMap<&ResiduePoint, usize> = system.points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let next: Vec<usize> = system.points.iter().map(|x| index[&reduced.apply(x)]).collect();
    let n = next.len();
    // cycle detection by colouring walks
    let mut state = vec![0u8; n];
    let mut on_cycle = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut path = Vec::new();
        let mut k = start;
        while state[k] == 0 {
            state[k] = 1;
            path.push(k);
            k = next[k];
        }
        if state[k] == 1 {
            let pos = path.iter().position(|&v| v == k).expect("on path");
            let mut cycle = path[pos..].to_vec();
            let least = cycle.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).expect("nonempty");
            cycle.rotate_left(least);
            for &v in &cycle {
                on_cycle[v] = true;
            }
            cycles.push(cycle);
        }
        for v in path {
            state[v] = 2;
        }
    }
    cycles.sort_by_key(|c| c[0]);
    let mut tail_lengths = vec![0usize; n];
    for (start, tail) in tail_lengths.iter_mut().enumerate() {
        let mut k = start;
        while !on_cycle[k] {
            k = next[k];
            *tail += 1;
        }
    }
    Ok(FunctionalGraph { p, s, points: system.points, next, cycles, tail_lengths })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionPeriod {
    pub s: u32,
    pub tail: usize,
    pub period: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    pub p: u64,
    pub per_precision: Vec<PrecisionPeriod>,
    /// Exact period over Q, when the point is periodic.
    pub rational_period: Option<u64>,
}

impl PeriodReport {
    /// Period at precision s divides the period at s + 1.
    pub fn is_divisibility_chain(&self) -> bool {
        self.per_precision.windows(2).all(|w| w[1].period % w[0].period == 0)
    }
}

/// Tail and eventual period of the reduction of x at each precision 1..=s_max.
pub fn zp_period_detect(f: &P1Map, x: &ProjPoint, p: u64, s_max: u32, caps: &Caps) -> Result<PeriodReport> {
    if s_max == 0 {
        return Err(Error::input("s_max must be at least 1"));
    }
    let mut per_precision = Vec::new();
    for s in 1..=s_max {
        let reduced = ReducedMap::new(f, p, s)?;
        let mut seen: HashMap<ResiduePoint, usize> = HashMap::new();
        let mut y = reduce_point(x, p, s)?;
        let mut k = 0;
        while !seen.contains_key(&y) {
            if k > caps.enumeration as usize {
                return Err(Error::resource("residue orbit exceeds the enumeration cap"));
            }
            seen.insert(y.clone(), k);
            y = reduced.apply(&y);
            k += 1;
        }
        let tail = seen[&y];
        per_precision.push(PrecisionPeriod { s, tail, period: k - tail });
    }
    let rational_period = rational_period(f, x, caps)?;
    Ok(PeriodReport { p, per_precision, rational_period })
}

/// Exact period over Q, decided by the height bound (or eigenvalues in degree one).
pub fn rational_period(f: &P1Map, x: &ProjPoint, caps: &Caps) -> Result<Option<u64>> {
    Ok(match is_preperiodic(f, x, caps)? {
        Preperiodicity::Preperiodic { tail: 0, cycle, .. } => Some(cycle as u64),
        _ => None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodBound {
    pub bound: u64,
    pub cycle_lengths: Vec<usize>,
    /// Candidates m·r·p^e0 over cycle lengths m mod p and r | p − 1.
    pub candidates: Vec<u64>,
    pub e0: u32,
    pub label: &'static str,
}

impl PeriodBound {
    pub fn admits(&self, period: u64) -> bool {
        self.candidates.iter().any(|&c| c % period == 0)
    }
}

pub fn period_bound_p1(f: &P1Map, p: u64, e0: u32, caps: &Caps) -> Result<PeriodBound> {
    if f.degree() < 2 {
        return Err(Error::precondition("period bound needs degree at least 2"));
    }
    let graph = induced_dynamics(f, p, 1, caps)?;
    let cycle_lengths = graph.cycle_lengths();
    let pe = p.pow(e0);
    let mut candidates: Vec<u64> =
        cycle_lengths.iter().flat_map(|&m| divisors(p - 1).into_iter().map(move |r| m as u64 * r * pe)).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let bound = *candidates.last().expect("some cycle exists");
    Ok(PeriodBound { bound, cycle_lengths, candidates, e0, label: "heuristic bound, empirically verified" })
}

/// Rational solutions of f(β) = y.
pub fn rational_preimages(f: &P1Map, y: &ProjPoint) -> Vec<ProjPoint> {
    let (y0, y1) = (&y.coords()[0], &y.coords()[1]);
    let form: Vec<BigInt> = f.f_coeffs().iter().zip(f.g_coeffs()).map(|(a, b)| a * y1 - b * y0).collect();
    form_rational_roots(&BinForm::from_bigints(&form))
}

#[derive(Clone, Debug, Serialize)]
pub struct PreimageBound {
    /// Least precision at which γ and α reduce differently.
    pub s: u32,
    /// #P¹(Z/p^s): no β in P¹(Z_p) has f^n(β) = γ with n > M.
    pub m: u128,
    pub p: u64,
    pub alpha_period: u64,
}

/// The depth bound for preimage chains of γ, where γ ≠ α eventually maps to the periodic point α.
pub fn preimage_depth_bound(f: &P1Map, alpha: &ProjPoint, gamma: &ProjPoint, p: u64, caps: &Caps) -> Result<PreimageBound> {
    if alpha == gamma {
        return Err(Error::input("gamma must differ from alpha"));
    }
    if !f.has_good_reduction(p) {
        return Err(Error::input(format!("{f} has bad reduction at {p}")));
    }
    let alpha_period =
        rational_period(f, alpha, caps)?.ok_or_else(|| Error::precondition(format!("{} is not periodic", alpha.p1_string())))?;
    let reaches = match is_preperiodic(f, gamma, caps)? {
        Preperiodicity::Preperiodic { orbit, .. } => orbit.contains(alpha),
        Preperiodicity::Wandering { .. } => false,
    };
    if !reaches {
        return Err(Error::precondition(format!("{} does not map to {}", gamma.p1_string(), alpha.p1_string())));
    }
    let mut s = 1;
    while reduce_point(gamma, p, s)? == reduce_point(alpha, p, s)? {
        s += 1;
    }
    Ok(PreimageBound { s, m: residue_count(1, p, s), p, alpha_period })
}

/// Longest chain β → … → γ of rational preimages, searched to `max_depth`.
pub fn longest_rational_preimage_chain(f: &P1Map, gamma: &ProjPoint, max_depth: usize) -> usize {
    let mut level = vec![gamma.clone()];
    let mut depth = 0;
    let mut visited = vec![gamma.clone()];
    while depth < max_depth {
        let mut next = Vec::new();
        for y in &level {
            for b in rational_preimages(f, y) {
                next.push(b);
            }
        }
        // points on a cycle through γ would give arbitrarily long chains
        if next.is_empty() {
            break;
        }
        for b in &next {
            if !visited.contains(b) {
                visited.push(b.clone());
            }
        }
        level = next;
        depth += 1;
    }
    depth
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> P1Map {
        P1Map::polynomial_ints(c).unwrap()
    }

    fn labelled_cycles(g: &FunctionalGraph) -> Vec<Vec<String>> {
        let ring = PrimePower::new(g.p, g.s).unwrap();
        g.cycles.iter().map(|c| c.iter().map(|&i| g.points[i].p1_label(&ring)).collect()).collect()
    }

    #[test]
    fn dynamics_examples() {
        let caps = Caps::default();
        let g = induced_dynamics(&poly(&[0, 0, 1]), 3, 1, &caps).unwrap();
        let mut cycles = labelled_cycles(&g);
        cycles.sort();
        assert_eq!(cycles, vec![vec!["0"], vec!["1"], vec!["inf"]]);
        let ring = PrimePower::new(3, 1).unwrap();
        let two = g.points.iter().position(|x| x.p1_label(&ring) == "2").unwrap();
        assert_eq!(g.points[g.next[two]].p1_label(&ring), "1");
        assert_eq!(g.tail_lengths[two], 1);

        let g = induced_dynamics(&poly(&[1, 0, 1]), 5, 1, &caps).unwrap();
        let mut cycles = labelled_cycles(&g);
        cycles.sort();
        assert_eq!(cycles.len(), 2);
        assert!(cycles.contains(&vec!["inf".to_string()]));
        let ring = PrimePower::new(5, 1).unwrap();
        let three_cycle: Vec<_> = cycles.iter().find(|c| c.len() == 3).unwrap().clone();
        let mut sorted = three_cycle.clone();
        sorted.sort();
        assert_eq!(sorted, ["0", "1", "2"]);
        for (from, to) in [("3", "0"), ("4", "2")] {
            let i = g.points.iter().position(|x| x.p1_label(&ring) == from).unwrap();
            assert_eq!(g.points[g.next[i]].p1_label(&ring), to);
        }

        let id = induced_dynamics(&P1Map::identity(), 3, 2, &caps).unwrap();
        assert_eq!(id.cycles.len(), 12);
        assert!(induced_dynamics(&poly(&[0, 0, 2]), 2, 1, &caps).is_err());
    }

    #[test]
    fn preimage_bound_examples() {
        let caps = Caps::default();
        let sq = poly(&[0, 0, 1]);
        let one = ProjPoint::affine_int(1);
        let minus = ProjPoint::affine_int(-1);
        let b = preimage_depth_bound(&sq, &one, &minus, 3, &caps).unwrap();
        assert_eq!((b.s, b.m), (1, 4));
        let b = preimage_depth_bound(&sq, &one, &minus, 2, &caps).unwrap();
        assert_eq!((b.s, b.m), (2, 6));
        let b = preimage_depth_bound(&poly(&[-1, 0, 1]), &ProjPoint::affine_int(0), &one, 5, &caps).unwrap();
        assert_eq!((b.s, b.m), (1, 6));
        assert!(preimage_depth_bound(&sq, &one, &one, 3, &caps).is_err());
        assert_eq!(longest_rational_preimage_chain(&sq, &minus, 10), 0);
        assert_eq!(longest_rational_preimage_chain(&poly(&[-1, 0, 1]), &one, 10), 0);
    }

    #[test]
    fn period_examples() {
        let caps = Caps::default();
        let r = zp_period_detect(&poly(&[-1, 0, 1]), &ProjPoint::affine_int(0), 5, 3, &caps).unwrap();
        assert!(r.per_precision.iter().all(|x| x.period == 2 && x.tail == 0));
        assert_eq!(r.rational_period, Some(2));
        let r = zp_period_detect(&poly(&[0, 0, 1]), &ProjPoint::affine_int(2), 3, 2, &caps).unwrap();
        assert_eq!(r.per_precision[0], PrecisionPeriod { s: 1, tail: 1, period: 1 });
        assert!(r.is_divisibility_chain());
        let r = zp_period_detect(&P1Map::identity(), &ProjPoint::affine_int(7), 3, 3, &caps).unwrap();
        assert!(r.per_precision.iter().all(|x| x.period == 1));
    }

    #[test]
    fn period_bound_examples() {
        let caps = Caps::default();
        let b = period_bound_p1(&poly(&[-1, 0, 1]), 5, 1, &caps).unwrap();
        assert_eq!((b.cycle_lengths.clone(), b.bound), (vec![1, 2], 40));
        assert!(b.admits(2));
        let b = period_bound_p1(&poly(&[0, 0, 1]), 5, 1, &caps).unwrap();
        assert_eq!((b.cycle_lengths.clone(), b.bound), (vec![1], 20));
        let b = period_bound_p1(&poly(&[0, 0, 1]), 3, 1, &caps).unwrap();
        assert_eq!(b.bound, 6);
    }
}
