//! Exact arithmetic: rationals, Q(sqrt d), simple extensions, polynomials,
//! binary forms, matrices and factorization.

pub mod alg;
pub mod binform;
pub mod cyclotomic;
pub mod factor;
pub mod field;
pub mod intfactor;
pub mod invariant;
pub mod matrix;
pub mod poly;
pub mod quad;
pub mod rat;

pub use alg::{AlgElem, Extension};
pub use binform::{resultant, BinForm};
pub use cyclotomic::{cyclotomic, root_of_unity_order};
pub use factor::{factor_rational, FactorField, Factorization};
pub use field::Field;
pub use invariant::invariant_kernel;
pub use matrix::{Basis, Matrix};
pub use poly::UniPoly;
pub use quad::QuadElem;
pub use rat::Rat;
