//! Closed rational intervals with outward-rounded arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{bits_for, format_rational, isqrt, max, min, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(format!(
                "interval bounds out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    /// `[center - radius, center + radius]` for `radius >= 0`.
    pub fn around(center: &Rational, radius: &Rational) -> Self {
        let r = radius.abs();
        Self {
            lo: center - &r,
            hi: center + &r,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: min(&self.lo, &other.lo),
            hi: max(&self.hi, &other.hi),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    /// Enclosure of `x^2` over the interval (tight, not `x * x`).
    pub fn square(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if !self.lo.is_positive() && !self.hi.is_negative() {
            Self {
                lo: Rational::zero(),
                hi: max(&a, &b),
            }
        } else {
            Self {
                lo: min(&a, &b),
                hi: max(&a, &b),
            }
        }
    }

    /// Enclosure of `1/x`; fails if the interval contains zero.
    pub fn recip(&self) -> Result<Self> {
        if self.contains(&Rational::zero()) {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    /// Enclosure of `sqrt(t)` for all `t` in the interval.
    ///
    /// Each endpoint is rounded outward to a grid of mesh at most `eps`, so
    /// the result is at most `sqrt(hi) - sqrt(lo) + 2 eps` wide. Endpoints that
    /// are squares of rationals are returned exactly.
    pub fn sqrt(&self, eps: &Rational) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::domain(format!(
                "square root of interval with negative lower end {}",
                self.lo
            )));
        }
        if !eps.is_positive() {
            return Err(Error::domain("sqrt precision must be positive"));
        }
        let bits = bits_for(eps);
        let (lo, _) = sqrt_bounds(&self.lo, bits);
        let (_, hi) = sqrt_bounds(&self.hi, bits);
        Ok(Self { lo, hi })
    }
}

/// Rational `(a, b)` with `a <= sqrt(t) <= b` and `b - a <= 2^-bits`.
fn sqrt_bounds(t: &Rational, bits: u32) -> (Rational, Rational) {
    if t.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    // sqrt(p/q) = sqrt(p q 4^k) / (q 2^k)
    let (p, q) = (t.numer(), t.denom());
    let scale = BigInt::one() << bits as usize;
    let n = p * q * &scale * &scale;
    let s = isqrt(&n);
    let den = q * &scale;
    let lo = Rational::new(s.clone(), den.clone());
    if &s * &s == n {
        (lo.clone(), lo)
    } else {
        (lo, Rational::new(s + BigInt::one(), den))
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().cloned().unwrap_or_default();
        let hi = c.iter().max().cloned().unwrap_or_default();
        RationalInterval { lo, hi }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}
