//! Commutators, word enumeration and bounded lower-central / derived
//! series checks for finitely generated subgroups of PGL.

use std::collections::HashSet;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::field::Field;
use crate::maps::linear::ProjLinAuto;
use crate::words::default_names;

/// Generators of a subgroup of PGL_{n+1}(F), with names. When `affine` is
/// set the group acts on Aⁿ = {last coordinate ≠ 0} and loci are
/// restricted to that chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroupPresentation<F: Field> {
    pub generators: Vec<ProjLinAuto<F>>,
    pub names: Vec<String>,
    pub affine: bool,
}

impl<F: Field> MatrixGroupPresentation<F> {
    pub fn new(generators: Vec<ProjLinAuto<F>>) -> Result<Self> {
        let names = default_names(generators.len());
        Self::named(generators, names, false)
    }

    pub fn affine(generators: Vec<ProjLinAuto<F>>) -> Result<Self> {
        let names = default_names(generators.len());
        Self::named(generators, names, true)
    }

    pub fn named(generators: Vec<ProjLinAuto<F>>, names: Vec<String>, affine: bool) -> Result<Self> {
        let size = generators.first().ok_or_else(|| Error::input("need at least one generator"))?.size();
        if generators.iter().any(|g| g.size() != size) {
            return Err(Error::input("generators have different sizes"));
        }
        if names.len() != generators.len() {
            return Err(Error::input("one name per generator"));
        }
        Ok(MatrixGroupPresentation { generators, names, affine })
    }

    pub fn size(&self) -> usize {
        self.generators[0].size()
    }

    /// Distinct elements given by words of length 0..=max_len in the
    /// generators and their inverses (upper-case names), shortest word first.
    pub fn words(&self, max_len: usize, caps: &Caps) -> Result<Vec<GroupElement<F>>> {
        let mut letters = Vec::new();
        for (g, name) in self.generators.iter().zip(&self.names) {
            letters.push(GroupElement { element: g.clone(), word: name.clone() });
            letters.push(GroupElement { element: g.inverse(), word: name.to_uppercase() });
        }
        let identity = GroupElement { element: ProjLinAuto::identity(self.size()), word: "e".to_string() };
        let mut seen: HashSet<ProjLinAuto<F>> = HashSet::from([identity.element.clone()]);
        let mut out = vec![identity];
        let mut frontier = vec![out[0].clone()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for a in &letters {
                    let element = a.element.compose(&w.element);
                    if seen.insert(element.clone()) {
                        if seen.len() > caps.hash_entries {
                            return Err(Error::resource(format!("more than {} group elements", caps.hash_entries)));
                        }
                        let word = if w.word == "e" { a.word.clone() } else { format!("{}{}", a.word, w.word) };
                        next.push(GroupElement { element, word });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement<F: Field> {
    pub element: ProjLinAuto<F>,
    /// A word or iterated commutator naming the element.
    pub word: String,
}

/// g⁻¹h⁻¹gh, normalized.
pub fn group_commutator<F: Field>(g: &ProjLinAuto<F>, h: &ProjLinAuto<F>) -> ProjLinAuto<F> {
    g.inverse().compose(&h.inverse()).compose(g).compose(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub expression: String,
    pub matrix: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub depth: usize,
    pub word_length: usize,
    /// The sampled (depth+1)-th lower central layer is trivial.
    pub nilpotent_up_to: bool,
    /// The sampled (depth+1)-th derived layer is trivial.
    pub solvable_up_to: bool,
    /// Nontrivial elements found in each lower central layer C_2, C_3, ….
    pub lower_central_sizes: Vec<usize>,
    pub derived_sizes: Vec<usize>,
    /// Nontrivial elements of the last lower central layer (at most 5).
    pub witnesses: Vec<Witness>,
    pub evidence: &'static str,
}

fn commutator_layer<F: Field>(
    left: &[GroupElement<F>],
    right: &[GroupElement<F>],
    caps: &Caps,
) -> Result<Vec<GroupElement<F>>> {
    let mut seen: HashSet<ProjLinAuto<F>> = HashSet::new();
    let mut out = Vec::new();
    for x in left {
        for y in right {
            if x.element.commutes_with(&y.element) {
                continue;
            }
            let c = group_commutator(&x.element, &y.element);
            if seen.insert(c.clone()) {
                if seen.len() > caps.hash_entries {
                    return Err(Error::resource(format!("commutator layer exceeds {} elements", caps.hash_entries)));
                }
                out.push(GroupElement { element: c, word: format!("[{},{}]", x.word, y.word) });
            }
        }
    }
    Ok(out)
}

/// Bounded check of the lower central and derived series.
///
/// With W the nontrivial elements of word length ≤ `word_length`, the
/// layers are C₁ = D₁ = W, C_{k+1} = [C_k, W ∪ C_k] and D_{k+1} = [D_k, D_k].
/// Then D_k ⊆ C_k, so nilpotent evidence implies solvable evidence. A
/// TRUE answer is evidence on the sample, not a proof.
pub fn series_check<F: Field>(
    group: &MatrixGroupPresentation<F>,
    depth: usize,
    word_length: usize,
    caps: &Caps,
) -> Result<StructureReport> {
    if depth == 0 || word_length == 0 {
        return Err(Error::input("depth and word length must be at least 1"));
    }
    let base: Vec<GroupElement<F>> = group.words(word_length, caps)?.into_iter().filter(|w| !w.element.is_identity()).collect();
    let mut lower = base.clone();
    let mut derived = base.clone();
    let mut lower_central_sizes = Vec::new();
    let mut derived_sizes = Vec::new();
    for _ in 0..depth {
        let mut partners = base.clone();
        partners.extend(lower.iter().cloned());
        lower = commutator_layer(&lower, &partners, caps)?;
        derived = commutator_layer(&derived, &derived, caps)?;
        lower_central_sizes.push(lower.len());
        derived_sizes.push(derived.len());
    }
    let witnesses = lower.iter().take(5).map(|w| Witness { expression: w.word.clone(), matrix: w.element.to_string() }).collect();
    Ok(StructureReport {
        depth,
        word_length,
        nilpotent_up_to: lower.is_empty(),
        solvable_up_to: derived.is_empty(),
        lower_central_sizes,
        derived_sizes,
        witnesses,
        evidence: "bounded: words and commutators up to the stated length and depth",
    })
}
