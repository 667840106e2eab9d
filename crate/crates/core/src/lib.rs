//! Supports, coefficients and Newton polytopes of non-symmetric Macdonald
//! polynomials, with executable checks of their M-convexity.

pub mod bruhat;
pub mod error;
pub mod fillings;
pub mod geometry;
pub mod lattice;
pub mod macdonald;
pub mod points;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{Cell, Composition, Diagram, WeightVector};
pub use points::{PointSet, SupportSet};
