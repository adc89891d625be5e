//! Eigenvalue-ratio tools: ratio polynomials, periods of points under
//! linear maps, and projective orders of matrices.
//!
//! A vector v is periodic for M in PGL exactly when its minimal polynomial
//! μ_v is squarefree and every ratio λ_i/λ_j of roots of μ_v is a root of
//! unity; the period is then the lcm of the orders of those ratios.

use num_integer::Integer;


use crate::exact::cyclotomic::split_cyclotomic;
use crate::exact::field::Field;
use crate::exact::matrix::{interpolate, parallel, Matrix};
use crate::exact::poly::{resultant, UniPoly};

/// Monic polynomial whose roots are the ratios λ/μ for q(λ) = 0 and r(μ) = 0,
/// Res_z(r(z), q(t·z)), computed by interpolation in t.
pub fn ratio_polynomial<F: Field>(q: &UniPoly<F>, r: &UniPoly<F>) -> UniPoly<F> {
    let degree = q.deg() * r.deg();
    let points: Vec<F> = (1..=degree as i64 + 1).map(F::from_int).collect();
    let values: Vec<F> = points.iter().map(|t| resultant(r, &q.scale_variable(t))).collect();
    interpolate(&points, &values).monic()
}

/// Ratio polynomial of `p` with itself, with the trivial ratios λ/λ = 1 removed.
pub fn self_ratio_polynomial<F: Field>(p: &UniPoly<F>) -> UniPoly<F> {
    let mut rp = ratio_polynomial(p, p);
    let t_minus_1 = UniPoly::linear_root(F::one());
    for _ in 0..p.deg() {
        rp = rp.exact_div(&t_minus_1).expect("λ/λ = 1 is a root");
    }
    rp
}

/// The monic polynomial of least degree with μ(M) v = 0.
pub fn vector_minimal_polynomial<F: Field>(m: &Matrix<F>, v: &[F]) -> UniPoly<F> {
    let mut krylov: Vec<Vec<F>> = vec![v.to_vec()];
    loop {
        let next = m.apply(krylov.last().expect("nonempty"));
        krylov.push(next);
        let kernel = Matrix::from_columns(&krylov).kernel();
        if let Some(relation) = kernel.first() {
            return UniPoly::new(relation.clone()).monic();
        }
    }
}

/// The minimal polynomial of a square matrix.
pub fn matrix_minimal_polynomial<F: Field>(m: &Matrix<F>) -> UniPoly<F> {
    let n = m.rows();
    let mut acc = UniPoly::one();
    for i in 0..n {
        let mut e = vec![F::zero(); n];
        e[i] = F::one();
        let mu = vector_minimal_polynomial(m, &e);
        let g = acc.gcd(&mu);
        acc = (&acc * &mu).exact_div(&g).expect("lcm");
    }
    acc.monic()
}

/// For a polynomial with distinct roots, the least k ≥ 1 with all λ_i^k
/// equal, if every ratio is a root of unity.
pub fn common_power_order<F: Field>(mu: &UniPoly<F>, field_degree: usize) -> Option<u64> {
    if !mu.is_squarefree() {
        return None;
    }
    if mu.deg() <= 1 {
        return Some(1);
    }
    let split = split_cyclotomic(&self_ratio_polynomial(mu), field_degree.max(1));
    if !split.all_roots_of_unity() {
        return None;
    }
    Some(split.orders.iter().fold(1u64, |acc, &k| acc.lcm(&k)))
}

/// Exact period of the projective point `v` under `m`, or `None` if it is not periodic.
pub fn point_period<F: Field>(m: &Matrix<F>, v: &[F]) -> Option<u64> {
    let mu = vector_minimal_polynomial(m, v);
    let sample: Vec<F> = m.entries().iter().chain(v).cloned().collect();
    let k = common_power_order(&mu, F::field_degree(&sample))?;
    debug_assert!(parallel(&m.pow(k).apply(v), v));
    Some(k)
}

/// Order of `m` in PGL, or `None` when it has infinite order.
pub fn projective_order<F: Field>(m: &Matrix<F>) -> Option<u64> {
    let mu = matrix_minimal_polynomial(m);
    let k = common_power_order(&mu, F::field_degree(m.entries()))?;
    debug_assert!(m.pow(k).is_scalar());
    Some(k)
}

/// True when M^k restricted to the span of `basis` is a scalar.
pub fn acts_as_scalar<F: Field>(mk: &Matrix<F>, basis: &[Vec<F>]) -> bool {
    let mut scalar: Option<F> = None;
    for v in basis {
        let w = mk.apply(v);
        let Some(i) = v.iter().position(|x| !x.is_zero()) else { continue };
        let c = w[i].clone() / v[i].clone();
        if w.iter().zip(v).any(|(a, b)| *a != c.clone() * b.clone()) {
            return false;
        }
        match &scalar {
            Some(s) if *s != c => return false,
            None => scalar = Some(c),
            _ => {}
        }
    }
    true
}
