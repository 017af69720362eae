//! Bounded self-adjoint operators, the integral `<x|f(A) x>` and the
//! spectral valuation `nu_A`.

pub mod measure;
pub mod operator;
pub mod poly;
pub mod sets;
pub mod valuation;

pub use measure::{Atom, SpectralMeasure};
pub use operator::{BoundedOperator, OperatorKind, Truncated};
pub use poly::{bernstein_approx, Approximation, Polynomial};
pub use sets::{ClosedRationalSet, PLFunction};
pub use valuation::{
    diagonal_integral, diagonal_oracle, documented_fuel, integral, integral_bernstein,
    trapezoid_witness, valuation_bound, valuation_semidecide, valuation_upper, SpectralValuation,
};
