//! Exactly-unit rational approximants of directions.

use num_traits::{One, Signed, Zero};

use super::vector::{inner_product, SparseVector};
use crate::arith::rational::{exact_sqrt, pow2_neg};
use crate::arith::{gauss, GaussianRational, Rational, RationalInterval};
use crate::error::{Error, Result};

/// A unit vector `u` (`|u|^2 = 1` exactly) with `|u - x/|x|| < eps`.
///
/// When `|x|^2` is the square of a rational the normalization is exact.
/// Otherwise the real coordinates of `x / |x|` are pushed through the
/// stereographic chart centred opposite the largest coordinate, using a
/// rational approximation `s` of `|x|`. The inverse chart maps every rational
/// point onto the unit sphere, so the result is exactly unit; `s` is refined
/// until the exact closeness test passes.
pub fn rationalize_unit(
    x: &SparseVector<GaussianRational>,
    eps: &Rational,
) -> Result<SparseVector<GaussianRational>> {
    if x.is_zero() {
        return Err(Error::domain("cannot normalize the zero vector"));
    }
    if !eps.is_positive() {
        return Err(Error::domain("rationalize_unit needs eps > 0"));
    }
    let n = x.norm_sq();
    if let Some(norm) = exact_sqrt(&n) {
        return Ok(x.scale_rational(&norm.recip()));
    }

    // real coordinates (index, is_imaginary, value)
    let coords: Vec<(usize, bool, Rational)> = x
        .entries()
        .flat_map(|(i, z)| [(i, false, z.re.clone()), (i, true, z.im.clone())])
        .filter(|(_, _, q)| !q.is_zero())
        .collect();
    let pivot = coords
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .2.abs().cmp(&b.1 .2.abs()))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let pivot_abs = coords[pivot].2.abs();
    let pivot_sign = if coords[pivot].2.is_negative() {
        -Rational::one()
    } else {
        Rational::one()
    };

    let mut bits = 8u32;
    loop {
        let s = RationalInterval::point(n.clone())
            .sqrt(&pow2_neg(bits))?
            .midpoint();
        // chart coordinates t_j = x_j / (s + |x_pivot|)
        let denom = &s + &pivot_abs;
        let t: Vec<Rational> = coords
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != pivot)
            .map(|(_, c)| &c.2 / &denom)
            .collect();
        let t_sq: Rational = t.iter().map(|q| q * q).sum();
        let scale = (Rational::one() + &t_sq).recip();
        let two = Rational::from_integer(2.into());

        let mut u = SparseVector::zero();
        let mut ts = t.iter();
        for (k, (i, imag, _)) in coords.iter().enumerate() {
            let value = if k == pivot {
                &pivot_sign * (Rational::one() - &t_sq) * &scale
            } else {
                ts.next().map(|tj| &two * tj * &scale).unwrap_or_default()
            };
            let add = if *imag {
                gauss(Rational::zero(), value)
            } else {
                gauss(value, Rational::zero())
            };
            let cur = u.get(*i);
            u.set(*i, cur + add);
        }
        debug_assert!(u.norm_sq().is_one());
        if within(&u, x, &n, eps) {
            return Ok(u);
        }
        bits += 8;
    }
}

/// Exact test of `|u - x/sqrt(n)| < eps` for unit `u`:
/// `|u - x/|x||^2 = 2 - 2 Re<u|x> / sqrt(n)`.
fn within(
    u: &SparseVector<GaussianRational>,
    x: &SparseVector<GaussianRational>,
    n: &Rational,
    eps: &Rational,
) -> bool {
    let a = inner_product(u, x).re;
    let b = Rational::one() - eps * eps / Rational::from_integer(2.into());
    // want a > b sqrt(n)
    greater_than_scaled_root(&a, &b, n)
}

/// Decides `a > b * sqrt(n)` exactly for `n >= 0`.
pub(crate) fn greater_than_scaled_root(a: &Rational, b: &Rational, n: &Rational) -> bool {
    match (a.is_negative(), b.is_negative()) {
        (false, true) => true,
        (false, false) => a * a > b * b * n,
        (true, false) => false,
        (true, true) => a * a < b * b * n,
    }
}
