//! Exact computations for periodic and preperiodic points of morphisms of
//! the projective line and of linear automorphisms of projective space.

pub mod arcs;
pub mod caps;
pub mod error;
pub mod exact;
pub mod groups;
pub mod heights;
pub mod maps;
pub mod perlocus;
pub mod words;

pub use caps::Caps;
pub use error::{Error, Result};
