//! Projective-linear automorphisms of Pⁿ and affine automorphisms of Aⁿ.

use std::fmt;


use crate::error::{Error, Result};
use crate::exact::field::Field;
use crate::exact::matrix::Matrix;

/// An element of PGL_{n+1}(F), stored as the canonical scalar multiple of
/// its matrix (the row-major entry vector normalized as a projective line).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjLinAuto<F: Field> {
    matrix: Matrix<F>,
}

fn normalized<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let mut out = m.clone();
    F::normalize_line(out.entries_mut());
    out
}

impl<F: Field> ProjLinAuto<F> {
    pub fn new(m: Matrix<F>) -> Result<Self> {
        if !m.is_square() || m.rows() < 2 {
            return Err(Error::input(format!("need a square matrix of size at least 2, got {}x{}", m.rows(), m.cols())));
        }
        if m.determinant().is_zero() {
            return Err(Error::validation("singular matrix is not an automorphism"));
        }
        Ok(ProjLinAuto { matrix: normalized(&m) })
    }

    pub fn identity(size: usize) -> Self {
        ProjLinAuto { matrix: normalized(&Matrix::identity(size)) }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    /// Size n+1 of the matrix.
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        ProjLinAuto { matrix: normalized(&self.matrix.mul(&other.matrix)) }
    }

    pub fn inverse(&self) -> Self {
        ProjLinAuto { matrix: normalized(&self.matrix.inverse().expect("invertible")) }
    }

    pub fn pow(&self, k: u64) -> Self {
        ProjLinAuto { matrix: normalized(&self.matrix.pow(k)) }
    }

    /// Scalar matrices are the identity of PGL.
    pub fn is_identity(&self) -> bool {
        self.matrix.is_scalar()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Image of a coordinate vector, normalized as a projective point.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut w = self.matrix.apply(v);
        F::normalize_line(&mut w);
        w
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> ProjLinAuto<G> {
        ProjLinAuto { matrix: normalized(&self.matrix.map(f)) }
    }
}

impl<F: Field> fmt::Display for ProjLinAuto<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// x ↦ A x + b on Aⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAuto<F: Field> {
    linear: Matrix<F>,
    translation: Vec<F>,
}

impl<F: Field> AffineAuto<F> {
    pub fn new(linear: Matrix<F>, translation: Vec<F>) -> Result<Self> {
        if !linear.is_square() || linear.rows() == 0 {
            return Err(Error::input("affine map needs a nonempty square linear part"));
        }
        if translation.len() != linear.rows() {
            return Err(Error::input(format!(
                "translation has length {}, linear part has size {}",
                translation.len(),
                linear.rows()
            )));
        }
        if linear.determinant().is_zero() {
            return Err(Error::validation("singular linear part is not an automorphism"));
        }
        Ok(AffineAuto { linear, translation })
    }

    pub fn linear(&self) -> &Matrix<F> {
        &self.linear
    }

    pub fn translation(&self) -> &[F] {
        &self.translation
    }

    pub fn dimension(&self) -> usize {
        self.linear.rows()
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        self.linear.apply(x).into_iter().zip(&self.translation).map(|(a, b)| a + b.clone()).collect()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        let linear = self.linear.mul(&other.linear);
        let translation = self.apply(&other.translation);
        AffineAuto { linear, translation }
    }

    /// The block matrix [[A, b], [0, 1]]; (x) corresponds to (x : 1).
    pub fn embed(&self) -> ProjLinAuto<F> {
        let n = self.dimension();
        let mut m = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.linear.get(i, j).clone());
            }
            m.set(i, n, self.translation[i].clone());
        }
        m.set(n, n, F::one());
        ProjLinAuto::new(m).expect("invertible linear part")
    }
}
