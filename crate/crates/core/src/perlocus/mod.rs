//! Periodic and preperiodic loci.

pub mod eigen;
pub mod linear;
pub mod prep;

pub use eigen::{point_period, projective_order};
pub use linear::{per_locus_linear, per_star_linear, per_star_star_linear, PerComponent, PerLocus};
pub use prep::{prep_form, prep_project, rational_periodic_points, PrepForm, PrepLocus};
