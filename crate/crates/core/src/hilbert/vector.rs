//! Finitely supported vectors of l2.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::gcd_all;
use crate::arith::{Rational, Scalar};

/// A vector with finitely many nonzero coordinates.
///
/// Coordinates are indexed by naturals; absent indices are zero and no zero
/// is ever stored, so structural equality is vector equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVector<K> {
    entries: BTreeMap<usize, K>,
}

impl<K: Scalar> Default for SparseVector<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Scalar> SparseVector<K> {
    pub fn zero() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    /// The standard basis vector `e_n`.
    pub fn basis(n: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(n, K::one());
        Self { entries }
    }

    /// Builds from `(index, value)` pairs; repeated indices are summed.
    pub fn from_entries(items: impl IntoIterator<Item = (usize, K)>) -> Self {
        let mut v = Self::zero();
        for (i, x) in items {
            let cur = v.entries.remove(&i).unwrap_or_else(K::zero);
            v.set(i, cur + x);
        }
        v
    }

    /// Dense prefix `x_0, x_1, ...`.
    pub fn from_dense(values: impl IntoIterator<Item = K>) -> Self {
        Self::from_entries(values.into_iter().enumerate())
    }

    pub fn set(&mut self, i: usize, x: K) {
        if x.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, x);
        }
    }

    pub fn get(&self, i: usize) -> K {
        self.entries.get(&i).cloned().unwrap_or_else(K::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &K)> {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Largest index carrying a nonzero entry.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(&i, x)| (i, x.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&K::from_rational(q.clone()))
    }

    /// `self + k * other`.
    pub fn axpy(&self, k: &K, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, y) in &other.entries {
            let cur = out.entries.remove(&i).unwrap_or_else(K::zero);
            out.set(i, cur + k.clone() * y.clone());
        }
        out
    }

    /// Coordinates with index `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self {
            entries: self.entries.range(..n).map(|(&i, x)| (i, x.clone())).collect(),
        }
    }

    /// Coordinates with index `>= n`.
    pub fn tail(&self, n: usize) -> Self {
        Self {
            entries: self.entries.range(n..).map(|(&i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> SparseVector<L> {
        SparseVector::from_entries(self.entries.iter().map(|(&i, x)| (i, f(x))))
    }

    pub fn norm_sq(&self) -> Rational {
        self.entries.values().map(Scalar::abs_sq).sum()
    }

    /// The rescaling by a positive rational whose coordinates have coprime
    /// integer numerators. Spans and directions are unchanged.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let parts: Vec<&Rational> = self
            .entries
            .values()
            .flat_map(|x| x.rational_parts())
            .filter(|q| !q.is_zero())
            .collect();
        let den = parts
            .iter()
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let nums: Vec<BigInt> = parts
            .iter()
            .map(|q| (q.numer() * &den / q.denom()).abs())
            .collect();
        let g = gcd_all(nums.iter());
        self.scale_rational(&Rational::new(den, g))
    }
}

/// `<x|y> = sum conj(x_n) y_n`, conjugate-linear in the first slot.
pub fn inner_product<K: Scalar>(x: &SparseVector<K>, y: &SparseVector<K>) -> K {
    let (small, large, swapped) = if x.entries.len() <= y.entries.len() {
        (x, y, false)
    } else {
        (y, x, true)
    };
    let mut acc = K::zero();
    for (i, a) in &small.entries {
        if let Some(b) = large.entries.get(i) {
            let term = if swapped {
                b.conj() * a.clone()
            } else {
                a.conj() * b.clone()
            };
            acc = acc + term;
        }
    }
    acc
}

impl<K: Scalar> Add for &SparseVector<K> {
    type Output = SparseVector<K>;
    fn add(self, rhs: &SparseVector<K>) -> SparseVector<K> {
        self.axpy(&K::one(), rhs)
    }
}

impl<K: Scalar> Sub for &SparseVector<K> {
    type Output = SparseVector<K>;
    fn sub(self, rhs: &SparseVector<K>) -> SparseVector<K> {
        self.axpy(&-K::one(), rhs)
    }
}

impl<K: Scalar> Neg for &SparseVector<K> {
    type Output = SparseVector<K>;
    fn neg(self) -> SparseVector<K> {
        self.scale(&-K::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gauss, int, rat, real, GaussianRational};

    type V = SparseVector<GaussianRational>;

    #[test]
    fn inner_product_examples() {
        assert!(inner_product(&V::basis(0), &V::basis(1)).is_zero());
        let x = V::basis(0).scale(&gauss(int(1), int(1)));
        assert_eq!(inner_product(&x, &V::basis(0)), gauss(int(1), int(-1)));
        let y = V::from_dense([gauss(rat(1, 2), int(2)), real(int(-3))]);
        let n = inner_product(&y, &y);
        assert!(n.im.is_zero());
        assert_eq!(n.re, y.norm_sq());
    }

    #[test]
    fn zeros_are_not_stored() {
        let v = &V::basis(3) - &V::basis(3);
        assert!(v.is_zero());
        assert_eq!(V::from_entries([(2, real(int(0)))]), V::zero());
        assert_eq!(V::from_entries([(1, real(int(1))), (1, real(int(-1)))]), V::zero());
    }

    #[test]
    fn primitive_form() {
        let v = V::from_dense([real(rat(2, 3)), gauss(int(0), rat(4, 3))]);
        assert_eq!(v.primitive(), V::from_dense([real(int(1)), gauss(int(0), int(2))]));
    }

    #[test]
    fn truncation_splits() {
        let v = V::from_dense([real(int(1)), real(int(2)), real(int(3))]);
        assert_eq!(&v.truncate(2) + &v.tail(2), v);
        assert_eq!(v.max_index(), Some(2));
    }
}
