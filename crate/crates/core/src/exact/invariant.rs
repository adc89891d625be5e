//! Invariant subspaces ker q(M) for factors q of the characteristic polynomial.

use super::field::Field;
use super::matrix::{Basis, Matrix};
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Basis of ker q(M). `q` must divide the characteristic polynomial of `m`.
pub fn invariant_kernel<F: Field>(m: &Matrix<F>, q: &UniPoly<F>) -> Result<Basis<F>> {
    if !m.is_square() {
        return Err(Error::input("invariant kernel of a non-square matrix"));
    }
    if q.deg() == 0 {
        return Err(Error::input("invariant kernel of a constant polynomial"));
    }
    if !q.divides(&m.charpoly()) {
        return Err(Error::input(format!("{q} does not divide the characteristic polynomial")));
    }
    Ok(q.eval_matrix(m).kernel())
}
