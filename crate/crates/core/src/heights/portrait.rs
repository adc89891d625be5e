//! The graph of rational preperiodic points of a P¹ morphism.
//!
//! Every preperiodic point has ĥ = 0, hence Weil height at most
//! B = C/(d−1); enumerating that finite set and deciding each candidate
//! gives the complete rational portrait.

use serde::Serialize;

use super::height_constant;
use super::preper::is_preperiodic;
use super::real::Real;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::intfactor::totient;
use crate::maps::p1::P1Map;
use crate::maps::point::{canonical_cmp, ProjPoint};

#[derive(Clone, Debug, Serialize)]
pub struct Portrait {
    pub vertices: Vec<ProjPoint>,
    /// (i, j) when f(vertices[i]) = vertices[j].
    pub edges: Vec<(usize, usize)>,
    pub tail_lengths: Vec<usize>,
    pub cycle_lengths: Vec<usize>,
    /// Every rational point of height ≤ this bound was decided.
    pub search_bound: Real,
    pub candidates_checked: u64,
}

impl Portrait {
    pub fn index_of(&self, x: &ProjPoint) -> Option<usize> {
        self.vertices.iter().position(|v| v == x)
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.index_of(x).is_some()
    }
}

/// Points of P¹(Q) with max(|p|, q) = h, in canonical order.
pub fn points_of_height(h: i64) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    if h == 0 {
        return out;
    }
    for p in -h..=h {
        for q in 0..=h {
            if p.abs().max(q) != h || num_integer::gcd(p, q) != 1 || (q == 0 && p != 1) {
                continue;
            }
            out.push(ProjPoint::from_ints(&[p, q]).expect("primitive"));
        }
    }
    out.sort_by(canonical_cmp);
    out
}

/// Number of points of P¹(Q) with max(|p|, q) ≤ h.
pub fn count_up_to_height(h: u64) -> u64 {
    if h == 0 {
        return 0;
    }
    // 0, ∞, ±1 at height 1; above that ±p/k and ±k/q with φ(k) choices each
    4 + (2..=h).map(|k| 4 * totient(k)).sum::<u64>()
}

/// All rational preperiodic points of f with their dynamics.
pub fn rational_portrait(f: &P1Map, caps: &Caps) -> Result<Portrait> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::precondition("rational portrait needs degree at least 2"));
    }
    let bound = height_constant(f)?.value().div_bigint(&num_bigint::BigInt::from(d - 1));
    let max_height = bound.upper().exp().floor();
    if !(max_height < caps.enumeration as f64) {
        return Err(Error::resource(format!("height bound {max_height} exceeds the enumeration cap")));
    }
    let max_height = max_height as u64;
    let candidates = count_up_to_height(max_height);
    if candidates > caps.enumeration {
        return Err(Error::resource(format!("{candidates} candidates exceed the enumeration cap {}", caps.enumeration)));
    }
    let mut vertices = Vec::new();
    for h in 1..=max_height as i64 {
        for x in points_of_height(h) {
            if is_preperiodic(f, &x, caps)?.is_preperiodic() {
                vertices.push(x);
            }
        }
    }
    vertices.sort_by(canonical_cmp);
    let index = |x: &ProjPoint| vertices.iter().position(|v| v == x);
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        let j = index(&f.apply(v)?).expect("preperiodic points map to preperiodic points of bounded height");
        edges.push((i, j));
    }
    let next: Vec<usize> = edges.iter().map(|&(_, j)| j).collect();
    let (mut tail_lengths, mut cycle_lengths) = (Vec::new(), Vec::new());
    for start in 0..vertices.len() {
        let mut first_seen = vec![usize::MAX; vertices.len()];
        let mut k = start;
        let mut step = 0;
        while first_seen[k] == usize::MAX {
            first_seen[k] = step;
            k = next[k];
            step += 1;
        }
        tail_lengths.push(first_seen[k]);
        cycle_lengths.push(step - first_seen[k]);
    }
    Ok(Portrait { vertices, edges, tail_lengths, cycle_lengths, search_bound: bound, candidates_checked: candidates })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> P1Map {
        P1Map::polynomial_ints(c).unwrap()
    }

    fn names(p: &Portrait) -> Vec<String> {
        p.vertices.iter().map(|v| v.p1_string()).collect()
    }

    #[test]
    fn height_enumeration_counts() {
        for h in 0..30u64 {
            let direct: usize = (1..=h as i64).map(|k| points_of_height(k).len()).sum();
            assert_eq!(direct as u64, count_up_to_height(h));
        }
        assert_eq!(points_of_height(1).iter().map(|x| x.p1_string()).collect::<Vec<_>>(), ["0", "inf", "1", "-1"]);
    }

    #[test]
    fn examples() {
        let caps = Caps::default();
        let sq = rational_portrait(&poly(&[0, 0, 1]), &caps).unwrap();
        assert_eq!(names(&sq), ["0", "inf", "1", "-1"]);
        assert!(sq.edges.contains(&(3, 2)));
        assert_eq!(sq.tail_lengths, [0, 0, 0, 1]);

        let c = rational_portrait(&poly(&[-1, 0, 1]), &caps).unwrap();
        assert_eq!(names(&c), ["0", "inf", "1", "-1"]);
        assert_eq!(c.cycle_lengths, [2, 1, 2, 2]);
        assert_eq!(c.tail_lengths, [0, 0, 1, 0]);

        // 2·(1/2)² = 1/2, so ±1/2 join 0 and ∞
        let t = rational_portrait(&poly(&[0, 0, 2]), &caps).unwrap();
        assert_eq!(names(&t), ["0", "inf", "1/2", "-1/2"]);
    }
}
