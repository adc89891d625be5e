//! Factorization of univariate polynomials over Q (squarefree split,
//! rational roots by Sturm isolation, Kronecker interpolation for the rest)
//! and over Q(sqrt d) (Trager's norm method on top of the rational case).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use super::intfactor::divisors;
use super::poly::UniPoly;
use super::quad::QuadElem;
use super::rat::Rat;
use crate::error::{Error, Result};

type QPoly = UniPoly<Rat>;

/// `constant · Π factorᵉ`, factors primitive over Z with positive leading
/// coefficient, ordered by degree then by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub constant: Rat,
    pub factors: Vec<(QPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> QPoly {
        let mut acc = QPoly::constant(self.constant.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u64);
        }
        acc
    }
}

/// Upper bound on Kronecker search nodes before giving up.
const KRONECKER_NODE_CAP: u64 = 50_000_000;

/// Deterministic factor order: degree, then ascending coefficients compared
/// by absolute value and then sign.
pub fn factor_order(a: &QPoly, b: &QPoly) -> Ordering {
    let key = |p: &QPoly| -> Vec<(BigInt, BigInt)> {
        p.primitive_integer_coeffs().into_iter().map(|c| (c.abs(), c)).collect()
    };
    a.deg().cmp(&b.deg()).then_with(|| key(a).cmp(&key(b)))
}

pub fn factor_rational(p: &QPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::input("cannot factor the zero polynomial"));
    }
    let mut factors: Vec<(QPoly, u32)> = Vec::new();
    for (s, mult) in p.squarefree_decomposition() {
        for f in irreducible_factors(&s.primitive())? {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| factor_order(&a.0, &b.0));
    let mut lead = Rat::one();
    for (f, e) in &factors {
        lead *= num_traits::pow(f.lead(), *e as usize);
    }
    Ok(Factorization { constant: p.lead() / lead, factors })
}

/// True when `p` (nonconstant) is irreducible over Q.
pub fn is_irreducible(p: &QPoly) -> Result<bool> {
    if p.deg() == 0 {
        return Ok(false);
    }
    let f = factor_rational(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// Irreducible factors of a primitive squarefree integer polynomial.
fn irreducible_factors(s: &QPoly) -> Result<Vec<QPoly>> {
    let mut rest = s.clone();
    let mut out = Vec::new();
    for r in rational_roots(s) {
        let lin = QPoly::new(vec![Rat::from_integer(-r.numer().clone()), Rat::from_integer(r.denom().clone())]).primitive();
        rest = rest.exact_div(&lin).expect("root divides").primitive();
        out.push(lin);
    }
    match rest.deg() {
        0 => {}
        1..=3 => out.push(rest),
        _ => out.extend(kronecker(&rest)?),
    }
    Ok(out)
}

// ---------------------------------------------------------------- roots

fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push((-&r).primitive_keep_sign());
    }
    seq
}

impl QPoly {
    /// Positive rescaling to integer coefficients; preserves the sign of every value.
    fn primitive_keep_sign(&self) -> Self {
        let prim = self.primitive();
        if prim.lead().is_positive() == self.lead().is_positive() {
            prim
        } else {
            -&prim
        }
    }
}

fn sign_changes(seq: &[QPoly], x: &Rat) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The fraction with the smallest denominator in [lo, hi].
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let fl = lo.floor();
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// All rational roots of a nonzero polynomial, ascending and without repetition.
pub fn rational_roots(p: &QPoly) -> Vec<Rat> {
    let mut f = p.squarefree_part().primitive();
    let mut roots = Vec::new();
    if f.deg() == 0 {
        return roots;
    }
    if f.coeff(0).is_zero() {
        roots.push(Rat::zero());
        f = f.exact_div(&QPoly::x()).expect("x divides").primitive();
    }
    'restart: while f.deg() >= 1 {
        if f.deg() == 1 {
            roots.push(-f.coeff(0) / f.coeff(1));
            break;
        }
        let lc = f.lead().abs();
        let bound = Rat::one() + f.coeffs().iter().map(|c| c.abs()).max().unwrap() / &lc;
        let resolution = (&lc * &lc).recip();
        let seq = sturm_sequence(&f);
        let mut stack = vec![(-bound.clone(), bound.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
            if count == 0 {
                continue;
            }
            if count == 1 && &hi - &lo < resolution {
                let c = simplest_between(&lo, &hi);
                if c.denom() <= lc.numer() && f.eval(&c).is_zero() {
                    roots.push(c.clone());
                    let lin = QPoly::new(vec![-Rat::from_integer(c.numer().clone()), Rat::from_integer(c.denom().clone())]);
                    f = f.exact_div(&lin).expect("root divides").primitive();
                    continue 'restart;
                }
                continue;
            }
            let mid = (&lo + &hi) / Rat::from_integer(2.into());
            if f.eval(&mid).is_zero() {
                roots.push(mid.clone());
                f = f.exact_div(&QPoly::linear_root(mid)).expect("root divides").primitive();
                continue 'restart;
            }
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        break;
    }
    roots.sort();
    roots
}

// ------------------------------------------------------------ Kronecker

fn to_ints(p: &QPoly) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

fn eval_int(p: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

struct Search<'a> {
    points: &'a [i64],
    values: Vec<Vec<BigInt>>,
    lead: BigInt,
    nodes: u64,
}

impl Search<'_> {
    /// Depth-first over divisor choices, keeping Newton coefficients integral.
    fn dfs(&mut self, newton: &mut Vec<BigInt>, f: &QPoly) -> Result<Option<QPoly>> {
        let j = newton.len();
        if j == self.points.len() {
            let top = newton.last().unwrap();
            if top.is_zero() || !(&self.lead % top).is_zero() {
                return Ok(None);
            }
            let g = newton_to_poly(self.points, newton).primitive();
            return Ok(f.exact_div(&g).map(|_| g));
        }
        let aj = BigInt::from(self.points[j]);
        for v in self.values[j].clone() {
            self.nodes += 1;
            if self.nodes > KRONECKER_NODE_CAP {
                return Err(Error::resource("Kronecker factor search exceeded its node cap"));
            }
            let mut acc = BigInt::zero();
            let mut prod = BigInt::one();
            for (i, c) in newton.iter().enumerate() {
                acc += c * &prod;
                prod *= &aj - BigInt::from(self.points[i]);
            }
            let (q, r) = (v - acc).div_rem(&prod);
            if !r.is_zero() {
                continue;
            }
            newton.push(q);
            if let Some(g) = self.dfs(newton, f)? {
                return Ok(Some(g));
            }
            newton.pop();
        }
        Ok(None)
    }
}

fn newton_to_poly(points: &[i64], newton: &[BigInt]) -> QPoly {
    let mut acc = QPoly::zero();
    let mut basis = QPoly::one();
    for (i, c) in newton.iter().enumerate() {
        acc = &acc + &basis.scale(&Rat::from_integer(c.clone()));
        basis = &basis * &QPoly::linear_root(Rat::from_integer(points[i].into()));
    }
    acc
}

/// Irreducible factors of a primitive squarefree polynomial of degree ≥ 4
/// without rational roots.
fn kronecker(f: &QPoly) -> Result<Vec<QPoly>> {
    let n = f.deg();
    let ints = to_ints(f);
    for k in 2..=n / 2 {
        let mut candidates: Vec<(usize, i64, u64)> = Vec::new();
        for a in (0..=40i64).flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] }) {
            let v = eval_int(&ints, a);
            if let Some(u) = v.abs().to_u64() {
                if u != 0 {
                    candidates.push((divisors(u).len(), a, u));
                }
            }
        }
        if candidates.len() < k + 1 {
            return Err(Error::resource("no small evaluation points for Kronecker factoring"));
        }
        candidates.sort();
        candidates.truncate(k + 1);
        let points: Vec<i64> = candidates.iter().map(|c| c.1).collect();
        let values: Vec<Vec<BigInt>> = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let divs = divisors(c.2);
                let mut vs: Vec<BigInt> = divs.iter().map(|&d| BigInt::from(d)).collect();
                if i > 0 {
                    vs.extend(divs.iter().map(|&d| -BigInt::from(d)));
                }
                vs
            })
            .collect();
        let mut search = Search { points: &points, values, lead: ints.last().unwrap().clone(), nodes: 0 };
        if let Some(g) = search.dfs(&mut Vec::new(), f)? {
            let rest = f.exact_div(&g).expect("checked").primitive();
            let mut out = vec![g];
            if rest.deg() >= 4 {
                out.extend(kronecker(&rest)?);
            } else {
                out.push(rest);
            }
            return Ok(out);
        }
    }
    Ok(vec![f.clone()])
}

// ------------------------------------------------------- Q(sqrt d) and trait

/// Fields whose polynomials can be factored into irreducibles.
pub trait FactorField: Field {
    /// Monic irreducible factors with multiplicities. `context` holds elements
    /// of the ambient field (for Q(sqrt d) it fixes d when `p` is rational).
    fn factor_monic(p: &UniPoly<Self>, context: &[Self]) -> Result<Vec<(UniPoly<Self>, u32)>>;
}

impl FactorField for Rat {
    fn factor_monic(p: &UniPoly<Self>, _: &[Self]) -> Result<Vec<(UniPoly<Self>, u32)>> {
        Ok(factor_rational(p)?.factors.into_iter().map(|(f, e)| (f.monic(), e)).collect())
    }
}

fn radicand_of(p: &UniPoly<QuadElem>, context: &[QuadElem]) -> Option<i64> {
    p.coeffs().iter().chain(context).find_map(|c| c.radicand())
}

fn conjugate_poly(p: &UniPoly<QuadElem>) -> UniPoly<QuadElem> {
    p.map(|c| c.conjugate())
}

fn to_rational_poly(p: &UniPoly<QuadElem>) -> QPoly {
    p.map(|c| c.to_rat().expect("norm polynomial is rational"))
}

fn sqrt_d(d: i64) -> QuadElem {
    QuadElem::new(Rat::zero(), Rat::one(), d).expect("valid radicand")
}

/// Splits a monic squarefree polynomial over Q(sqrt d) into irreducibles.
fn trager_split(s: &UniPoly<QuadElem>, d: i64) -> Result<Vec<UniPoly<QuadElem>>> {
    if s.deg() <= 1 {
        return Ok(vec![s.clone()]);
    }
    for k in 0..64i64 {
        let shift = sqrt_d(d) * QuadElem::from_int(k);
        let sk = s.shift(&-shift.clone());
        let norm = to_rational_poly(&(&sk * &conjugate_poly(&sk)));
        if !norm.is_squarefree() {
            continue;
        }
        let mut out = Vec::new();
        for (ni, _) in factor_rational(&norm)?.factors {
            let lifted = ni.map(QuadElem::from_rat);
            let g = sk.gcd(&lifted);
            if g.deg() >= 1 {
                out.push(g.shift(&shift).monic());
            }
        }
        return Ok(out);
    }
    Err(Error::resource("no squarefree norm found for the Trager shift"))
}

impl FactorField for QuadElem {
    fn factor_monic(p: &UniPoly<Self>, context: &[Self]) -> Result<Vec<(UniPoly<Self>, u32)>> {
        if p.is_zero() {
            return Err(Error::input("cannot factor the zero polynomial"));
        }
        let Some(d) = radicand_of(p, context) else {
            let rat = to_rational_poly(p);
            return Ok(Rat::factor_monic(&rat, &[])?
                .into_iter()
                .map(|(f, e)| (f.map(QuadElem::from_rat), e))
                .collect());
        };
        let mut out = Vec::new();
        for (s, e) in p.squarefree_decomposition() {
            for f in trager_split(&s, d)? {
                out.push((f, e));
            }
        }
        out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.to_string().cmp(&b.0.to_string())));
        Ok(out)
    }
}
