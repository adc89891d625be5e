//! Group-structure verifiers for finitely generated groups of
//! projective-linear and affine maps.

pub mod series;
pub mod verify;

pub use series::{group_commutator, series_check, MatrixGroupPresentation, StructureReport};
pub use verify::{
    commutator_orbit_check, commute_same_verify, nil_same_verify, solvable_common_point, CommuteReport, NilSameReport, NilSameStatus,
    SolvableReport,
};
