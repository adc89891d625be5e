//! Residue machinery over Z/p^s: reductions, induced finite dynamics,
//! period and preimage bounds, residue-disc linearization, orbits under
//! groups of periodic generators, and exponent checks in characteristic p.

pub mod burnside;
pub mod charp;
pub mod dynamics;
pub mod linearize;
pub mod residue;

pub use burnside::{burnside_orbit, group_closure, OrbitResult};
pub use charp::{charp_exponent_check, CharpMode, CharpReport};
pub use dynamics::{induced_dynamics, period_bound_p1, preimage_depth_bound, zp_period_detect, FunctionalGraph};
pub use linearize::{arc_linearization, in_arc_subgroup, ArcData};
pub use residue::{reduce_point, residue_count, PrimePower, ResiduePoint, ResidueSystem};
