//! The functional-calculus integral and the spectral valuation.
//!
//! `nu_A(x)(C)` is the infimum of `<x|f(A) x>` over piecewise-linear `f`
//! with `f > 1` on `C`. Upper bounds come from an explicit witness
//! sequence: step `k` uses the trapezoid that is `1 + 2^-k` on `C` and
//! falls to 0 within `2^-k` of it, integrated to precision `2^-(k+1)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::measure::SpectralMeasure;
use super::operator::BoundedOperator;
use super::poly::bernstein_approx;
use super::sets::{ClosedRationalSet, PLFunction};
use crate::arith::rational::{dyadic_above, isqrt, pow2_neg};
use crate::arith::{int, GaussianRational, Rational, RationalInterval, Semidecision, UpperReal, Verdict};
use crate::error::{Error, Result};
use crate::hilbert::SparseVector;
use crate::lattice::certificate::check_unit;

type Vector = SparseVector<GaussianRational>;

/// Largest Bernstein degree used for operators without a finite block.
pub const MAX_BERNSTEIN_DEGREE: usize = 4096;

fn check_inputs(a: &BoundedOperator, x: &Vector) -> Result<()> {
    if !a.is_self_adjoint() {
        return Err(Error::domain("operator is not self-adjoint"));
    }
    check_unit(x, "vector")
}

/// Enclosure of `<x|f(A) x>` of width at most `precision`.
///
/// Operators with a finite block go through their exact spectral measure.
/// Infinite banded operators use a Bernstein polynomial of `A` and its
/// exact moments; this fails when the required degree exceeds
/// [`MAX_BERNSTEIN_DEGREE`].
pub fn integral(
    a: &BoundedOperator,
    x: &Vector,
    f: &PLFunction,
    precision: &Rational,
) -> Result<RationalInterval> {
    check_inputs(a, x)?;
    if !precision.is_positive() {
        return Err(Error::domain("precision must be positive"));
    }
    if a.block().is_some() {
        let mut mu = SpectralMeasure::new(a, x)?;
        return Ok(mu.integral(f, precision));
    }
    integral_bernstein(a, x, f, precision)
}

/// The polynomial route: `<x|B_n f(A) x> ± error`.
pub fn integral_bernstein(
    a: &BoundedOperator,
    x: &Vector,
    f: &PLFunction,
    precision: &Rational,
) -> Result<RationalInterval> {
    check_inputs(a, x)?;
    // error (3/2) L / floor(sqrt n) <= precision / 2
    let need = (int(3) * f.lipschitz() / precision).ceil().to_integer();
    let root = need.max(BigInt::one());
    let n = &root * &root;
    let n: usize = n
        .try_into()
        .ok()
        .filter(|&n| n <= MAX_BERNSTEIN_DEGREE)
        .ok_or_else(|| {
            Error::precondition(format!(
                "precision {precision} needs Bernstein degree above {MAX_BERNSTEIN_DEGREE}"
            ))
        })?;
    debug_assert_eq!(isqrt(&BigInt::from(n)), root);
    let approx = bernstein_approx(f, n)?;
    let moments = a.moments(x, approx.poly.degree());
    let value: Rational = approx
        .poly
        .coeffs()
        .iter()
        .zip(&moments)
        .map(|(c, m)| c * m)
        .sum();
    Ok(RationalInterval::around(&value, &approx.error))
}

/// The witness for step `k`: `1 + 2^-k` on `C`, linear ramps of width
/// `2^-k`, 0 elsewhere. Components closer than `2^-(k-1)` share a plateau.
pub fn trapezoid_witness(c: &ClosedRationalSet, k: u32) -> PLFunction {
    if c.is_empty() {
        return PLFunction::constant(Rational::zero());
    }
    let eta = pow2_neg(k);
    let top = Rational::one() + &eta;
    let (lo, hi) = (int(-1), int(1));

    let mut plateaus: Vec<(Rational, Rational)> = Vec::new();
    for iv in c.intervals() {
        match plateaus.last_mut() {
            Some(last) if iv.lo() - &last.1 <= &eta * int(2) => last.1 = iv.hi().clone(),
            _ => plateaus.push((iv.lo().clone(), iv.hi().clone())),
        }
    }
    let mut points: Vec<(Rational, Rational)> = Vec::new();
    for (a, b) in plateaus {
        let left = &a - &eta;
        if a == lo {
            points.push((a.clone(), top.clone()));
        } else if left < lo {
            // the ramp is cut by the edge of [-1, 1]
            let v = &top * (&lo - &left) / &eta;
            points.push((lo.clone(), v));
            points.push((a.clone(), top.clone()));
        } else {
            points.push((left, Rational::zero()));
            points.push((a.clone(), top.clone()));
        }
        if b != a {
            points.push((b.clone(), top.clone()));
        }
        let right = &b + &eta;
        if b == hi {
        } else if right > hi {
            let v = &top * (&right - &hi) / &eta;
            points.push((hi.clone(), v));
        } else {
            points.push((right, Rational::zero()));
        }
    }
    points.dedup_by(|next, prev| next.0 == prev.0 && next.1 == prev.1);
    PLFunction::new(points).expect("witness breakpoints increase")
}

/// Upper bound number `k` on `nu_A(x)(C)`: the `2^-k` grid point above the
/// witness integral, capped at 1.
pub fn valuation_bound(
    a: &BoundedOperator,
    x: &Vector,
    c: &ClosedRationalSet,
    k: u32,
) -> Result<Rational> {
    let f = trapezoid_witness(c, k);
    let i = integral(a, x, &f, &pow2_neg(k + 1))?;
    Ok(dyadic_above(i.hi(), k).min(Rational::one()))
}

/// `nu_A(x)(C)` as an upper real; bound `k` comes from witness `k`.
///
/// Bounds the integral cannot reach (infinite banded operators at high
/// precision) are reported as the trivial bound 1.
pub fn valuation_upper(a: &BoundedOperator, x: &Vector, c: &ClosedRationalSet) -> Result<UpperReal> {
    check_inputs(a, x)?;
    let (a, x, c) = (a.clone(), x.clone(), c.clone());
    Ok(UpperReal::from_fn(move |k| {
        valuation_bound(&a, &x, &c, k as u32).unwrap_or_else(|_| Rational::one())
    }))
}

/// `nu_A(x)(C) < q`: fuel `f` tries witnesses `1..=f` and confirms when one
/// of them, checked to exceed 1 on `C`, has integral below `q`.
pub fn valuation_semidecide(
    a: &BoundedOperator,
    x: &Vector,
    c: &ClosedRationalSet,
    q: &Rational,
) -> Result<Semidecision> {
    check_inputs(a, x)?;
    let (a, x, c, q) = (a.clone(), x.clone(), c.clone(), q.clone());
    Ok(Semidecision::new(move |fuel| {
        for k in 1..=fuel.min(u32::MAX as u64) as u32 {
            let f = trapezoid_witness(&c, k);
            if !f.exceeds_one_on(&c) {
                continue;
            }
            if let Ok(i) = integral(&a, &x, &f, &pow2_neg(k + 1)) {
                if i.hi() < &q {
                    return Verdict::Confirmed;
                }
            }
        }
        Verdict::Unknown
    }))
}

/// Fuel after which [`valuation_upper`] is within `2^-10` of the true value,
/// when every spectral atom of `x` outside `C` is at distance at least `gap`
/// from `C`: `12 + ceil(log2(1 / gap))`.
pub fn documented_fuel(gap: &Rational) -> Result<u64> {
    if !gap.is_positive() {
        return Err(Error::domain("gap must be positive"));
    }
    let mut k = 0u64;
    let mut p = Rational::one();
    while &p > gap {
        p /= int(2);
        k += 1;
    }
    Ok(12 + k)
}

/// The observable of a bounded self-adjoint operator.
#[derive(Clone, Debug)]
pub struct SpectralValuation {
    op: BoundedOperator,
}

impl SpectralValuation {
    pub fn new(op: BoundedOperator) -> Result<Self> {
        if !op.is_self_adjoint() {
            return Err(Error::domain("operator is not self-adjoint"));
        }
        Ok(Self { op })
    }

    pub fn operator(&self) -> &BoundedOperator {
        &self.op
    }

    pub fn upper(&self, x: &Vector, c: &ClosedRationalSet) -> Result<UpperReal> {
        valuation_upper(&self.op, x, c)
    }

    pub fn less_than(&self, x: &Vector, c: &ClosedRationalSet, q: &Rational) -> Result<Semidecision> {
        valuation_semidecide(&self.op, x, c, q)
    }
}

/// `sum_{eigs[i] in C} |x_i|^2` for a diagonal operator.
pub fn diagonal_oracle(eigs: &[Rational], x: &Vector, c: &ClosedRationalSet) -> Result<Rational> {
    if let Some(m) = x.max_index() {
        if m >= eigs.len() {
            return Err(Error::domain(format!(
                "vector uses index {m}, only {} eigenvalues given",
                eigs.len()
            )));
        }
    }
    Ok(x.entries()
        .filter(|(i, _)| c.contains(&eigs[*i]))
        .map(|(_, z)| crate::arith::abs_sq(z))
        .sum())
}

/// `sum_i f(eigs[i]) |x_i|^2`.
pub fn diagonal_integral(eigs: &[Rational], x: &Vector, f: &PLFunction) -> Rational {
    x.entries()
        .map(|(i, z)| f.eval(&eigs[i]) * crate::arith::abs_sq(z))
        .sum()
}
