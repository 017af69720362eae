//! Certificates `(c, r)` and the ball / half-space tests behind them.
//!
//! For a unit `c` and `0 <= r < 1` the closed half-space is
//! `h(c, r) = { x : Re<c|x> >= sqrt(1 - r^2) }`. A certificate is valid for
//! `L` when the unit ball of `L` misses `h(c, r)`, which happens exactly when
//! `d(c, L) > r`. All tests here compare squares so no root is ever taken.

use num_traits::{One, Signed};

use super::subspace::FiniteSubspace;
use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::hilbert::{inner_product, SparseVector};

pub type Vector = SparseVector<GaussianRational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub c: Vector,
    pub r: Rational,
}

impl Certificate {
    pub fn new(c: Vector, r: Rational) -> Result<Self> {
        check_unit(&c, "certificate center")?;
        check_radius(&r)?;
        Ok(Self { c, r })
    }
}

pub(crate) fn check_unit(v: &Vector, what: &str) -> Result<()> {
    if v.norm_sq().is_one() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} must have norm 1 exactly, has norm^2 {}",
            v.norm_sq()
        )))
    }
}

pub(crate) fn check_radius(r: &Rational) -> Result<()> {
    if r.is_negative() || r >= &Rational::one() {
        return Err(Error::domain(format!("radius {r} outside [0, 1)")));
    }
    Ok(())
}

/// `r^2 < d(c, L)^2`, i.e. `(c, r)` certifies `L`.
pub fn certificate_valid(
    subspace: &FiniteSubspace<GaussianRational>,
    c: &Vector,
    r: &Rational,
) -> Result<bool> {
    check_unit(c, "certificate center")?;
    check_radius(r)?;
    Ok(r * r < subspace.distance_sq(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfspaceReport {
    /// Some `lambda` in `[-1, 1]` puts `lambda x` in the closed ball `B(c, r)`.
    pub in_closed_ball_scaled: bool,
    /// `x` or `-x` lies in `h(c, r)`: `|Re<c|x>| >= sqrt(1 - r^2)`.
    pub in_halfspace: bool,
    /// `x` itself (not only `-x`) lies in `h(c, r)`.
    pub positive_side: bool,
}

/// Ball and half-space membership for unit `c`, `x`.
///
/// The ball side minimizes `|c - lambda x|^2 = lambda^2 - 2 lambda a + 1`
/// over `[-1, 1]` (with `a = Re<c|x>`, the minimizer is `clamp(a)`) and
/// compares with `r^2`; the half-space side compares `a^2` with `1 - r^2`.
/// The two agree for every unit pair.
pub fn halfspace_tests(c: &Vector, r: &Rational, x: &Vector) -> Result<HalfspaceReport> {
    check_unit(c, "center")?;
    check_unit(x, "probe")?;
    check_radius(r)?;
    let a = inner_product(c, x).re;
    let one = Rational::one();

    let lambda = if a > one {
        one.clone()
    } else if a < -one.clone() {
        -one.clone()
    } else {
        a.clone()
    };
    let gap = c - &x.scale_rational(&lambda);
    let in_closed_ball_scaled = gap.norm_sq() <= r * r;

    let threshold = &one - r * r;
    let in_halfspace = &a * &a >= threshold;
    let positive_side = in_halfspace && a.is_positive();
    Ok(HalfspaceReport {
        in_closed_ball_scaled,
        in_halfspace,
        positive_side,
    })
}

/// Confirms `x ∉ L` from a single certificate for `L`.
///
/// Some phase multiple of `x/|x|` lies within `r` of `c` iff
/// `2 |<c|x>| > (2 - r^2) |x|`; then `d(x/|x|, L) >= d(c, L) - |..| > 0`.
pub(crate) fn certificate_excludes(cert: &Certificate, x: &Vector, x_norm_sq: &Rational) -> bool {
    let two = Rational::from_integer(2.into());
    let lhs = Rational::from_integer(4.into()) * crate::arith::abs_sq(&inner_product(&cert.c, x));
    let k = &two - &cert.r * &cert.r;
    lhs > &k * &k * x_norm_sq
}
