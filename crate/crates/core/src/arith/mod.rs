//! Exact scalars: rationals, Gaussian rationals, rational intervals, upper
//! reals and fuel-bounded semidecisions.

pub mod gaussian;
pub mod interval;
pub mod rational;
pub mod scalar;
pub mod semidecision;
pub mod upper;

pub use gaussian::{abs_sq, format_gaussian, gauss, parse_gaussian, real, GaussianRational};
pub use interval::RationalInterval;
pub use rational::{checked_div, format_rational, int, parse_rational, pow2_neg, rat, Rational};
pub use scalar::Scalar;
pub use semidecision::{Semidecision, Verdict};
pub use upper::{semidecide_less, upper_refine, UpperReal};
