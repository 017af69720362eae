//! The scalar field the linear algebra is generic over.

use std::fmt::Debug;

use num_traits::{Num, Zero};

use super::gaussian::{abs_sq, GaussianRational};
use super::rational::Rational;

/// An exact field with an involution and a rational modulus.
///
/// Implemented for [`Rational`] (real scalars, identity conjugation) and
/// [`GaussianRational`]. Both keep `|z|^2` rational, which is what keeps
/// inner products, norms and distances exact.
pub trait Scalar:
    Num + Clone + Debug + PartialEq + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    fn conj(&self) -> Self;
    fn abs_sq(&self) -> Rational;
    fn re(&self) -> Rational;
    fn from_rational(q: Rational) -> Self;

    /// Numerators and denominators of every rational coordinate, used to put
    /// vectors in primitive form.
    fn rational_parts(&self) -> Vec<&Rational>;
}

impl Scalar for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn abs_sq(&self) -> Rational {
        self * self
    }

    fn re(&self) -> Rational {
        self.clone()
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn rational_parts(&self) -> Vec<&Rational> {
        vec![self]
    }
}

impl Scalar for GaussianRational {
    fn conj(&self) -> Self {
        num_complex::Complex::conj(self)
    }

    fn abs_sq(&self) -> Rational {
        abs_sq(self)
    }

    fn re(&self) -> Rational {
        self.re.clone()
    }

    fn from_rational(q: Rational) -> Self {
        GaussianRational::new(q, Rational::zero())
    }

    fn rational_parts(&self) -> Vec<&Rational> {
        vec![&self.re, &self.im]
    }
}
