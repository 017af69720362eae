//! Exact computation with the Hilbert lattice, quantum states and spectral
//! valuations of bounded self-adjoint operators on `l2`.
//!
//! Everything is exact: scalars are Gaussian rationals, irrational values
//! are carried as rational intervals or as decreasing streams of rational
//! upper bounds, and observable-but-not-refutable propositions are fueled
//! semidecisions.

pub mod arith;
pub mod codec;
pub mod error;
pub mod hilbert;
pub mod lattice;
pub mod linalg;
pub mod spectral;
pub mod states;
pub mod topology;

pub use arith::{GaussianRational, Rational, RationalInterval, Scalar, Semidecision, UpperReal, Verdict};
pub use error::{Error, Result};

/// A finitely supported vector of `l2` with Gaussian-rational entries.
pub type Vector = hilbert::SparseVector<GaussianRational>;
/// A finitely supported real vector.
pub type RealVector = hilbert::SparseVector<Rational>;
/// The span of finitely many vectors of `l2`.
pub type Span = lattice::FiniteSubspace<GaussianRational>;
