//! Rational polynomials and Bernstein approximation on `[-1, 1]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::sets::PLFunction;
use crate::arith::rational::isqrt;
use crate::arith::{int, Rational, RationalInterval};
use crate::error::{Error, Result};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t - a`.
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Horner enclosure over an interval.
    pub fn eval_interval(&self, t: &RationalInterval) -> RationalInterval {
        self.coeffs.iter().rev().fold(RationalInterval::zero(), |acc, c| {
            &(&acc * t) + &RationalInterval::point(c.clone())
        })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c} t"),
                _ => format!("{c} t^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// A polynomial approximation together with a bound on `sup |f - p|` over
/// `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub poly: Polynomial,
    pub error: Rational,
}

/// Degree-`n` Bernstein polynomial of `f`, taken on `[-1, 1]` through
/// `s = (1 + t) / 2`.
///
/// The bound is `(3/2) L / floor(sqrt(n))` with `L` the largest slope of `f`;
/// since `|B_n g - g| <= Lip(g) sqrt(s (1 - s) / n)` and `Lip(g) = 2 L`, the
/// true error is at most `L / sqrt(n)`.
pub fn bernstein_approx(f: &PLFunction, n: usize) -> Result<Approximation> {
    if n == 0 {
        return Err(Error::domain("Bernstein degree must be at least 1"));
    }
    let binom = binomials(n);
    let nodes: Vec<Rational> = (0..=n)
        .map(|k| f.eval(&(Rational::new(BigInt::from(2 * k), BigInt::from(n)) - int(1))))
        .collect();
    // coefficient of s^j: sum_{k<=j} g_k C(n,k) C(n-k, j-k) (-1)^(j-k)
    let mut in_s = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut a = Rational::zero();
        for k in 0..=j {
            let inner = binomials(n - k);
            let term = &nodes[k] * Rational::from_integer(&binom[k] * &inner[j - k]);
            if (j - k) % 2 == 0 {
                a += term;
            } else {
                a -= term;
            }
        }
        in_s.push(a);
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let s = Polynomial::new(vec![half.clone(), half]);
    let poly = in_s
        .iter()
        .rev()
        .fold(Polynomial::default(), |acc, c| acc.mul(&s).add(&Polynomial::constant(c.clone())));
    let root = isqrt(&BigInt::from(n));
    let error = f.lipschitz() * Rational::new(BigInt::from(3), BigInt::from(2) * root);
    Ok(Approximation { poly, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use num_traits::Signed;

    #[test]
    fn polynomial_basics() {
        let p = Polynomial::new(vec![int(1), int(-3), int(2)]);
        assert_eq!(p.eval(&rat(1, 2)), int(0));
        assert_eq!(p.derivative(), Polynomial::new(vec![int(-3), int(4)]));
        let i = p.eval_interval(&RationalInterval::new(int(0), rat(1, 4)).unwrap());
        assert!(i.contains(&p.eval(&rat(1, 8))));
        assert_eq!(Polynomial::new(vec![int(0), int(0)]).degree(), 0);
    }

    #[test]
    fn constant_and_affine_are_reproduced() {
        let c = bernstein_approx(&PLFunction::constant(rat(2, 3)), 7).unwrap();
        assert_eq!(c.poly, Polynomial::constant(rat(2, 3)));
        let id = bernstein_approx(&PLFunction::identity(), 9).unwrap();
        assert_eq!(id.poly, Polynomial::new(vec![int(0), int(1)]));
        assert!(id.error >= int(0));
        assert!(bernstein_approx(&PLFunction::identity(), 0).is_err());
    }

    #[test]
    fn hat_error_on_grid() {
        let f = PLFunction::new(vec![(rat(-1, 2), int(0)), (int(0), int(1)), (rat(1, 2), int(0))]).unwrap();
        let a = bernstein_approx(&f, 100).unwrap();
        assert_eq!(a.error, rat(3, 10));
        for k in -200..=200 {
            let t = rat(k, 200);
            let d = (f.eval(&t) - a.poly.eval(&t)).abs();
            assert!(d <= a.error, "at {t}: {d}");
        }
    }

    #[test]
    fn bernstein_matches_direct_sum() {
        let f = PLFunction::new(vec![(int(-1), int(0)), (rat(1, 3), int(2)), (int(1), rat(-1, 2))]).unwrap();
        let n = 6;
        let a = bernstein_approx(&f, n).unwrap();
        let binom = binomials(n);
        for k in -4..=4 {
            let t = rat(k, 4);
            let s = (&t + int(1)) / int(2);
            let direct: Rational = (0..=n)
                .map(|j| {
                    let node = f.eval(&(rat(2 * j as i64, n as i64) - int(1)));
                    let mut w = Rational::from_integer(binom[j].clone());
                    for _ in 0..j {
                        w *= &s;
                    }
                    for _ in j..n {
                        w *= int(1) - &s;
                    }
                    node * w
                })
                .sum();
            assert_eq!(a.poly.eval(&t), direct);
        }
    }
}
