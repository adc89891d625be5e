//! Per_n, Per* and Per** for projective-linear automorphisms.
//!
//! Algebraic points are never materialized: a conjugate packet of
//! eigenlines is carried as an irreducible factor of a characteristic
//! polynomial together with the rational basis of ker q(M).

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::eigen::{acts_as_scalar, ratio_polynomial, self_ratio_polynomial};
use crate::error::Result;
use crate::exact::alg::{AlgElem, Extension};
use crate::exact::cyclotomic::split_cyclotomic;
use crate::exact::factor::FactorField;
use crate::exact::field::Field;
use crate::exact::intfactor::divisors;
use crate::exact::matrix::{Basis, Matrix};
use crate::exact::poly::UniPoly;
use crate::maps::linear::ProjLinAuto;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerComponent<F: Field> {
    pub subspace_basis: Basis<F>,
    /// Dimension of the eigenspace of one root of `defining_factor`.
    pub eigen_dimension: usize,
    pub defining_factor: UniPoly<F>,
    pub projective_dimension: usize,
    /// Least k such that g^k fixes every point of the component.
    pub minimal_period: u64,
    pub zero_dimensional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerLocus<F: Field> {
    pub n: u64,
    pub components: Vec<PerComponent<F>>,
}

impl<F: Field> PerComponent<F> {
    /// Number of geometric components in the packet (one per root of the factor).
    pub fn packet_size(&self) -> usize {
        self.defining_factor.deg()
    }
}

fn component_order<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.to_string().cmp(&b.to_string()))
}

/// Distinct monic irreducible factors of the characteristic polynomial of `m`.
pub fn eigen_factors<F: FactorField>(m: &Matrix<F>) -> Result<Vec<UniPoly<F>>> {
    let mut out: Vec<UniPoly<F>> = F::factor_monic(&m.charpoly(), m.entries())?.into_iter().map(|(q, _)| q).collect();
    out.sort_by(component_order);
    Ok(out)
}

/// Minimal polynomial of λⁿ for a root λ of the irreducible `q`.
pub fn power_factor<F: Field>(q: &UniPoly<F>, n: u64) -> UniPoly<F> {
    Matrix::companion(q).pow(n).charpoly().squarefree_part().monic()
}

/// Least k dividing n with M^k scalar on the eigenspace of Mⁿ for one root of `r`.
fn generic_period<F: Field>(m: &Matrix<F>, mn: &Matrix<F>, r: &UniPoly<F>, n: u64) -> u64 {
    let ext = Extension::new(r);
    let nu = ext.generator();
    let lift = |a: &Matrix<F>| a.map(|x| ext.embed(x));
    let shifted = lift(mn).sub(&Matrix::<AlgElem<F>>::identity(m.rows()).scale(&nu));
    let w = shifted.kernel();
    let m_ext = lift(m);
    for k in divisors(n) {
        if acts_as_scalar(&m_ext.pow(k), &w) {
            return k;
        }
    }
    n
}

/// Per_n(g): one component per irreducible factor of the characteristic
/// polynomial of Mⁿ, found from the factors of M's own characteristic
/// polynomial (the roots of the factor for λⁿ are the n-th powers).
pub fn per_locus_linear<F: FactorField>(g: &ProjLinAuto<F>, n: u64) -> Result<PerLocus<F>> {
    assert!(n >= 1, "period parameter must be positive");
    let m = g.matrix();
    let mn = m.pow(n);
    let mut factors: Vec<UniPoly<F>> = Vec::new();
    for q in eigen_factors(m)? {
        let r = power_factor(&q, n);
        if !factors.contains(&r) {
            factors.push(r);
        }
    }
    factors.sort_by(component_order);
    let components = factors
        .into_iter()
        .map(|r| {
            let basis = r.eval_matrix(&mn).kernel();
            let eigen_dimension = basis.len() / r.deg();
            let minimal_period = if eigen_dimension == 1 { 1 } else { generic_period(m, &mn, &r, n) };
            PerComponent {
                subspace_basis: basis,
                eigen_dimension,
                projective_dimension: eigen_dimension - 1,
                zero_dimensional: eigen_dimension == 1,
                defining_factor: r,
                minimal_period,
            }
        })
        .collect();
    Ok(PerLocus { n, components })
}

/// Per*(g): the isolated eigenlines of M itself. Any one-dimensional
/// eigenspace of Mⁿ is M-invariant, hence an eigenline of M, so n = 1 suffices.
pub fn per_star_linear<F: FactorField>(g: &ProjLinAuto<F>) -> Result<Vec<PerComponent<F>>> {
    Ok(per_locus_linear(g, 1)?.components.into_iter().filter(|c| c.zero_dimensional).collect())
}

/// Per**(g): the isolated eigenlines for λ such that λ/μ is never a root of
/// unity for another eigenvalue μ; otherwise some power of g merges the
/// eigenline into a positive-dimensional fixed component.
pub fn per_star_star_linear<F: FactorField>(g: &ProjLinAuto<F>) -> Result<Vec<PerComponent<F>>> {
    let m = g.matrix();
    let factors = eigen_factors(m)?;
    let degree = F::field_degree(m.entries());
    let mut out = Vec::new();
    for c in per_star_linear(g)? {
        let q = &c.defining_factor;
        let merges = factors.iter().any(|r| {
            let ratios = if r == q { self_ratio_polynomial(q) } else { ratio_polynomial(q, r) };
            !split_cyclotomic(&ratios, degree).orders.is_empty()
        });
        if !merges {
            out.push(c);
        }
    }
    Ok(out)
}

impl<F: Field> Serialize for PerComponent<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let basis: Vec<Vec<String>> = self.subspace_basis.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        let mut st = s.serialize_struct("PerComponent", 6)?;
        st.serialize_field("defining_factor", &self.defining_factor.to_string())?;
        st.serialize_field("subspace_basis", &basis)?;
        st.serialize_field("eigen_dimension", &self.eigen_dimension)?;
        st.serialize_field("projective_dimension", &self.projective_dimension)?;
        st.serialize_field("minimal_period", &self.minimal_period)?;
        st.serialize_field("zero_dimensional", &self.zero_dimensional)?;
        st.end()
    }
}

impl<F: Field> Serialize for PerLocus<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PerLocus", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("components", &self.components)?;
        st.end()
    }
}
