//! Orbits of a rational point under a group generated by projective-linear
//! maps, each of which has the point as a periodic point.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::rat::Rat;
use crate::maps::linear::ProjLinAuto;
use crate::maps::point::ProjPoint;
use crate::perlocus::eigen::point_period;
use crate::words::default_names;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    /// Orbit points in breadth-first order, starting with x.
    pub orbit: Vec<ProjPoint>,
    /// Index of the stabilizer of x; `None` when the cap was reached first.
    pub stabilizer_index: Option<usize>,
    /// For each orbit point, a word sending x to it (upper case = inverse;
    /// the last letter acts first).
    pub words: Vec<String>,
    /// Period of x under each generator.
    pub generator_periods: Vec<u64>,
}

impl OrbitResult {
    pub fn is_closed(&self) -> bool {
        self.stabilizer_index.is_some()
    }
}

impl Serialize for OrbitResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OrbitResult", 4)?;
        st.serialize_field("orbit", &self.orbit)?;
        match self.stabilizer_index {
            Some(i) => st.serialize_field("stabilizer_index", &i)?,
            None => st.serialize_field("stabilizer_index", "OVER_CAP")?,
        }
        st.serialize_field("words", &self.words)?;
        st.serialize_field("generator_periods", &self.generator_periods)?;
        st.end()
    }
}

fn act(g: &ProjLinAuto<Rat>, x: &ProjPoint) -> Result<ProjPoint> {
    ProjPoint::new(&g.apply(&x.rat_coords()))
}

/// Breadth-first orbit of x under the generators and their inverses,
/// stopping once more than `cap` points are found.
pub fn burnside_orbit(gens: &[ProjLinAuto<Rat>], x: &ProjPoint, cap: usize) -> Result<OrbitResult> {
    if gens.is_empty() {
        return Err(Error::input("need at least one generator"));
    }
    if gens.iter().any(|g| g.size() != x.dimension() + 1) {
        return Err(Error::input("generator size does not match the point"));
    }
    let names = default_names(gens.len());
    let mut generator_periods = Vec::with_capacity(gens.len());
    for (g, name) in gens.iter().zip(&names) {
        let period = point_period(g.matrix(), &x.rat_coords())
            .ok_or_else(|| Error::precondition(format!("{} is not periodic under generator {name}", x.p1_string())))?;
        generator_periods.push(period);
    }
    let mut letters: Vec<(ProjLinAuto<Rat>, String)> = Vec::new();
    for (g, name) in gens.iter().zip(&names) {
        letters.push((g.clone(), name.clone()));
        letters.push((g.inverse(), name.to_uppercase()));
    }
    let mut index: HashMap<ProjPoint, usize> = HashMap::new();
    let mut orbit = vec![x.clone()];
    let mut words = vec![String::new()];
    index.insert(x.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, name) in &letters {
            let y = act(g, &orbit[i])?;
            if index.contains_key(&y) {
                continue;
            }
            if orbit.len() >= cap {
                return Ok(OrbitResult { orbit, stabilizer_index: None, words, generator_periods });
            }
            index.insert(y.clone(), orbit.len());
            words.push(format!("{name}{}", words[i]));
            orbit.push(y);
            queue.push_back(orbit.len() - 1);
        }
    }
    let size = orbit.len();
    Ok(OrbitResult { orbit, stabilizer_index: Some(size), words, generator_periods })
}

/// All elements of the group generated by `gens`, if at most `cap`.
pub fn group_closure(gens: &[ProjLinAuto<Rat>], cap: usize) -> Result<Vec<ProjLinAuto<Rat>>> {
    let size = gens.first().ok_or_else(|| Error::input("need at least one generator"))?.size();
    let identity = ProjLinAuto::identity(size);
    let mut seen: HashSet<ProjLinAuto<Rat>> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity];
    let mut k = 0;
    while k < elements.len() {
        for g in gens {
            let h = g.compose(&elements[k]);
            if seen.insert(h.clone()) {
                if elements.len() >= cap {
                    return Err(Error::resource(format!("group has more than {cap} elements")));
                }
                elements.push(h);
            }
        }
        k += 1;
    }
    // a finite set closed under left multiplication by generators is the group
    Ok(elements)
}
