//! Cyclotomic polynomials and root-of-unity detection.
//!
//! A root of unity of order k has degree φ(k) over Q and φ(k) ≥ √(k/2), so
//! a polynomial of degree D over a field of degree e can only have roots of
//! unity with k ≤ 2(D·e)². All searches below stay inside that bound.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::factor::is_irreducible;
use super::field::Field;
use super::intfactor::totient;
use super::poly::UniPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

fn cache() -> &'static Mutex<HashMap<u64, UniPoly<Rat>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, UniPoly<Rat>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The k-th cyclotomic polynomial Φ_k, k ≥ 1.
pub fn cyclotomic(k: u64) -> UniPoly<Rat> {
    assert!(k >= 1);
    if let Some(p) = cache().lock().unwrap().get(&k) {
        return p.clone();
    }
    let mut p = UniPoly::<Rat>::monomial(Rat::from_integer(1.into()), k as usize);
    p = &p - &UniPoly::one();
    for d in (1..k).filter(|d| k % d == 0) {
        p = p.exact_div(&cyclotomic(d)).expect("cyclotomic divisor");
    }
    cache().lock().unwrap().insert(k, p.clone());
    p
}

/// Largest order worth testing for roots of degree ≤ `q_degree` over Q.
pub fn order_search_bound(q_degree: usize) -> u64 {
    2 * (q_degree as u64).pow(2)
}

/// Orders k (ascending) with φ(k) ≤ `q_degree`.
pub fn candidate_orders(q_degree: usize) -> Vec<u64> {
    (1..=order_search_bound(q_degree).max(2)).filter(|&k| totient(k) as usize <= q_degree).collect()
}

/// If the roots of the irreducible rational polynomial `q` are primitive
/// k-th roots of unity, returns k.
pub fn root_of_unity_order(q: &UniPoly<Rat>) -> Result<Option<u64>> {
    if q.deg() == 0 {
        return Err(Error::input("root-of-unity test needs a nonconstant polynomial"));
    }
    if !is_irreducible(q)? {
        return Err(Error::input(format!("{q} is reducible over Q")));
    }
    let dq = q.deg();
    let qm = q.monic();
    for k in 1..=order_search_bound(dq) {
        if totient(k) as usize == dq && cyclotomic(k) == qm {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Result of peeling cyclotomic factors off a polynomial over any field.
#[derive(Clone, Debug)]
pub struct CyclotomicSplit<F: Field> {
    /// Orders found, with repetition for repeated roots, ascending.
    pub orders: Vec<u64>,
    /// The part of the polynomial with no root-of-unity roots.
    pub rest: UniPoly<F>,
}

impl<F: Field> CyclotomicSplit<F> {
    pub fn all_roots_of_unity(&self) -> bool {
        self.rest.deg() == 0
    }
}

/// Splits `p` into its root-of-unity part and the rest, using gcds with
/// Φ_k inside F[t]. `field_degree` bounds [F : Q].
pub fn split_cyclotomic<F: Field>(p: &UniPoly<F>, field_degree: usize) -> CyclotomicSplit<F> {
    let mut rest = p.clone();
    let mut orders = Vec::new();
    if p.deg() == 0 {
        return CyclotomicSplit { orders, rest };
    }
    for k in candidate_orders(p.deg() * field_degree) {
        let phi = cyclotomic(k).map(|c| F::from_rat(c));
        loop {
            let g = rest.gcd(&phi);
            if g.deg() == 0 {
                break;
            }
            for _ in 0..g.deg() {
                orders.push(k);
            }
            rest = rest.exact_div(&g).expect("gcd divides");
        }
        if rest.deg() == 0 {
            break;
        }
    }
    CyclotomicSplit { orders, rest }
}

/// Distinct root-of-unity orders occurring among the roots of `p`.
pub fn root_of_unity_orders<F: Field>(p: &UniPoly<F>, field_degree: usize) -> Vec<u64> {
    let mut orders = split_cyclotomic(p, field_degree).orders;
    orders.dedup();
    orders
}
