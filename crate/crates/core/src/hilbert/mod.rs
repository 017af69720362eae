//! Finitely supported vectors of l2, inner products, Gram–Schmidt and
//! rational points of the unit sphere.

pub mod family;
pub mod unit;
pub mod vector;

pub use family::{distance_sq, gram_schmidt, OrthogonalFamily};
pub use unit::rationalize_unit;
pub use vector::{inner_product, SparseVector};
