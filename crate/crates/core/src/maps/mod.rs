//! Dynamical systems: P¹ morphisms, projective-linear and affine automorphisms.

pub mod linear;
pub mod p1;
pub mod point;
pub mod text;

pub use linear::{AffineAuto, ProjLinAuto};
pub use p1::P1Map;
pub use point::ProjPoint;
pub use text::{format_map_spec, parse_map_spec, MapSpec};
