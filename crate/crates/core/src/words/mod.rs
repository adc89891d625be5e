//! Words in a composition semigroup of P¹ morphisms.

pub mod certificates;
pub mod relations;

use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::maps::p1::P1Map;

pub use certificates::{prep_difference_witness, unbounded_orbit_certificate, DifferenceKind, DifferenceWitness, OrbitCertificate};
pub use relations::{relation_search, RelationReport, RelationStatus};

/// g_{i1} ∘ … ∘ g_{ik}: the last letter acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// letter ∘ self.
    pub fn prepend(&self, letter: usize) -> Self {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }

    /// Letters joined by generator names.
    pub fn spell(&self, names: &[String]) -> String {
        self.letters.iter().map(|&i| names[i].as_str()).collect()
    }

    /// Parses a word written as concatenated single-character generator names.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let mut letters = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let (i, name) = names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len())
                .ok_or_else(|| Error::input(format!("unknown generator at '{rest}'")))?;
            letters.push(i);
            rest = &rest[name.len()..];
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.letters.iter().max().map_or(0, |m| m + 1));
        write!(f, "{}", self.spell(&names))
    }
}

/// f, g, h, k, … for generator lists.
pub fn default_names(count: usize) -> Vec<String> {
    const LETTERS: &[u8] = b"fghkmnpqrstuvw";
    (0..count)
        .map(|i| if i < LETTERS.len() { (LETTERS[i] as char).to_string() } else { format!("g{i}") })
        .collect()
}

/// The composition named by the word, in normalized form.
pub fn evaluate(gens: &[P1Map], w: &Word, caps: &Caps) -> Result<P1Map> {
    if w.is_empty() {
        return Ok(P1Map::identity());
    }
    let mut degree: u128 = 1;
    for &i in &w.letters {
        let g = gens.get(i).ok_or_else(|| Error::input(format!("generator index {i} out of range")))?;
        degree = degree.saturating_mul(g.degree() as u128);
    }
    caps.check_degree(degree)?;
    let mut acc = gens[*w.letters.last().expect("nonempty")].clone();
    for &i in w.letters.iter().rev().skip(1) {
        acc = gens[i].compose(&acc);
    }
    Ok(acc)
}
