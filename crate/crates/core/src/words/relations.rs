//! Breadth-first relation search by hashing normalized maps.
//!
//! Words are generated as letter ∘ (canonical word of the previous level),
//! so every map reachable by a word of length ≤ L has a canonical
//! representative: if w ≡ c then a∘w ≡ a∘c.

use std::collections::HashMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{default_names, evaluate, Word};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::maps::p1::P1Map;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationStatus {
    /// No two words of length ≤ max_length agree (evidence, not a proof of freeness).
    FreeUpTo { max_length: usize, distinct_maps: usize },
    /// left ≠ right as words, equal as maps; left is the first colliding word.
    Relation { left: Word, right: Word, map: P1Map },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub names: Vec<String>,
    pub status: RelationStatus,
    /// Words evaluated, per length.
    pub words_per_length: Vec<usize>,
}

impl RelationReport {
    pub fn is_relation(&self) -> bool {
        matches!(self.status, RelationStatus::Relation { .. })
    }
}

/// Searches words of length 1..=max_len for a collision of normalized maps.
pub fn relation_search(gens: &[P1Map], max_len: usize, caps: &Caps) -> Result<RelationReport> {
    relation_search_named(gens, &default_names(gens.len()), max_len, caps)
}

pub fn relation_search_named(gens: &[P1Map], names: &[String], max_len: usize, caps: &Caps) -> Result<RelationReport> {
    if max_len == 0 {
        return Err(Error::input("max length must be at least 1"));
    }
    if gens.is_empty() {
        return Err(Error::input("need at least one generator"));
    }
    if names.len() != gens.len() {
        return Err(Error::input("one name per generator"));
    }
    let names = names.to_vec();
    let mut table: HashMap<P1Map, Word> = HashMap::new();
    let mut frontier: Vec<(Word, P1Map)> = vec![(Word::new(vec![]), P1Map::identity())];
    let mut words_per_length = Vec::new();
    for length in 1..=max_len {
        let mut candidates: Vec<(Word, usize, usize)> = Vec::new();
        for (k, (w, _)) in frontier.iter().enumerate() {
            for a in 0..gens.len() {
                candidates.push((w.prepend(a), a, k));
            }
        }
        candidates.sort_by(|x, y| x.0.cmp(&y.0));
        words_per_length.push(candidates.len());
        let mut next = Vec::with_capacity(candidates.len());
        for (word, a, k) in candidates {
            let base = &frontier[k].1;
            let map = if length == 1 { gens[a].clone() } else { gens[a].compose_capped(base, caps)? };
            if let Some(existing) = table.get(&map) {
                return Ok(RelationReport {
                    names,
                    status: RelationStatus::Relation { left: word, right: existing.clone(), map },
                    words_per_length,
                });
            }
            if table.len() >= caps.hash_entries {
                return Err(Error::resource(format!("hash table cap of {} entries reached", caps.hash_entries)));
            }
            table.insert(map.clone(), word.clone());
            next.push((word, map));
        }
        frontier = next;
    }
    Ok(RelationReport {
        names,
        status: RelationStatus::FreeUpTo { max_length: max_len, distinct_maps: table.len() },
        words_per_length,
    })
}

/// Re-evaluates both sides of a relation from scratch.
pub fn verify_relation(gens: &[P1Map], report: &RelationReport, caps: &Caps) -> Result<bool> {
    match &report.status {
        RelationStatus::Relation { left, right, map } => {
            let l = evaluate(gens, left, caps)?;
            let r = evaluate(gens, right, caps)?;
            Ok(left != right && &l == map && &r == map)
        }
        RelationStatus::FreeUpTo { .. } => Ok(true),
    }
}

/// Distinct maps among all words of length 1..=max_len, each evaluated
/// from scratch without pruning.
pub fn count_distinct_maps_unpruned(gens: &[P1Map], max_len: usize, caps: &Caps) -> Result<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut longer = Vec::new();
        for w in &words {
            for a in 0..gens.len() {
                let mut v = w.clone();
                v.push(a);
                seen.insert(evaluate(gens, &Word::new(v.clone()), caps)?);
                longer.push(v);
            }
        }
        words = longer;
    }
    Ok(seen.len())
}

impl Serialize for RelationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RelationReport", 6)?;
        st.serialize_field("generators", &self.names)?;
        match &self.status {
            RelationStatus::FreeUpTo { max_length, distinct_maps } => {
                st.serialize_field("status", &format!("FREE_UP_TO({max_length})"))?;
                st.serialize_field("distinct_maps", distinct_maps)?;
            }
            RelationStatus::Relation { left, right, map } => {
                let (l, r) = (left.spell(&self.names), right.spell(&self.names));
                st.serialize_field("status", &format!("RELATION({l}, {r})"))?;
                st.serialize_field("left", &l)?;
                st.serialize_field("right", &r)?;
                st.serialize_field("map", &map.to_string())?;
            }
        }
        st.serialize_field("words_per_length", &self.words_per_length)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> P1Map {
        P1Map::polynomial_ints(c).unwrap()
    }

    #[test]
    fn relation_for_2x_and_x2() {
        let caps = Caps::default();
        let gens = vec![poly(&[0, 2]), poly(&[0, 0, 1])];
        let report = relation_search(&gens, 3, &caps).unwrap();
        match &report.status {
            RelationStatus::Relation { left, right, map } => {
                assert_eq!(left.spell(&report.names), "ffg");
                assert_eq!(right.spell(&report.names), "gf");
                assert_eq!(map, &poly(&[0, 0, 4]));
            }
            other => panic!("{other:?}"),
        }
        assert!(verify_relation(&gens, &report, &caps).unwrap());
        assert!(!relation_search(&gens, 2, &caps).unwrap().is_relation());
    }

    #[test]
    fn identity_collides_with_itself() {
        let names = vec!["e".to_string()];
        let report = relation_search_named(&[P1Map::identity()], &names, 2, &Caps::default()).unwrap();
        match &report.status {
            RelationStatus::Relation { left, right, .. } => {
                assert_eq!((left.spell(&names), right.spell(&names)), ("ee".to_string(), "e".to_string()))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_pair_audited() {
        let caps = Caps::default();
        let gens = vec![poly(&[0, 0, 2]), poly(&[0, 0, 1])];
        for len in 1..=6 {
            let report = relation_search(&gens, len, &caps).unwrap();
            let RelationStatus::FreeUpTo { distinct_maps, .. } = report.status else { panic!("relation found") };
            assert_eq!(distinct_maps, (1 << (len + 1)) - 2);
            assert_eq!(distinct_maps, count_distinct_maps_unpruned(&gens, len, &caps).unwrap());
        }
    }

    #[test]
    fn hash_cap_is_enforced() {
        let caps = Caps { hash_entries: 5, ..Caps::default() };
        let gens = vec![poly(&[0, 0, 2]), poly(&[0, 0, 1])];
        assert!(matches!(relation_search(&gens, 4, &caps), Err(Error::Resource(_))));
    }
}
