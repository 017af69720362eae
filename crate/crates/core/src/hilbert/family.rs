//! Exact Gram–Schmidt over an orthogonal (not orthonormal) basis.

use num_traits::Zero;

use super::vector::{inner_product, SparseVector};
use crate::arith::{Rational, Scalar};
use crate::error::{Error, Result};

/// Pairwise orthogonal nonzero vectors.
///
/// Members are kept unnormalized so that projections only divide by the
/// rational `|b_i|^2`, never by a norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalFamily<K> {
    vectors: Vec<SparseVector<K>>,
    norms_sq: Vec<Rational>,
}

impl<K: Scalar> Default for OrthogonalFamily<K> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<K: Scalar> OrthogonalFamily<K> {
    pub fn empty() -> Self {
        Self {
            vectors: Vec::new(),
            norms_sq: Vec::new(),
        }
    }

    /// Checks the orthogonality invariant exactly.
    pub fn new(vectors: Vec<SparseVector<K>>) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::precondition(format!(
                    "orthogonal family member {i} is zero"
                )));
            }
            for (j, w) in vectors.iter().enumerate().skip(i + 1) {
                if !inner_product(v, w).is_zero() {
                    return Err(Error::precondition(format!(
                        "family members {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        let norms_sq = vectors.iter().map(SparseVector::norm_sq).collect();
        Ok(Self { vectors, norms_sq })
    }

    pub fn vectors(&self) -> &[SparseVector<K>] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Orthogonal projection onto the span.
    pub fn project(&self, c: &SparseVector<K>) -> SparseVector<K> {
        self.vectors
            .iter()
            .zip(&self.norms_sq)
            .fold(SparseVector::zero(), |acc, (b, n)| {
                let coeff = inner_product(b, c) * K::from_rational(n.recip());
                acc.axpy(&coeff, b)
            })
    }

    /// `d(c, span)^2 = |c|^2 - sum |<b_i|c>|^2 / |b_i|^2`.
    pub fn distance_sq(&self, c: &SparseVector<K>) -> Rational {
        let captured: Rational = self
            .vectors
            .iter()
            .zip(&self.norms_sq)
            .map(|(b, n)| inner_product(b, c).abs_sq() / n)
            .sum();
        c.norm_sq() - captured
    }

    pub fn contains(&self, c: &SparseVector<K>) -> bool {
        self.distance_sq(c).is_zero()
    }

    /// Adds `v` minus its projection; returns false if nothing new was spanned.
    pub fn push(&mut self, v: &SparseVector<K>) -> bool {
        let residual = (v - &self.project(v)).primitive();
        if residual.is_zero() {
            return false;
        }
        self.norms_sq.push(residual.norm_sq());
        self.vectors.push(residual);
        true
    }
}

/// Orthogonalizes `generators` in order, dropping dependent ones.
pub fn gram_schmidt<K: Scalar>(generators: &[SparseVector<K>]) -> OrthogonalFamily<K> {
    let mut family = OrthogonalFamily::empty();
    for g in generators {
        family.push(g);
    }
    family
}

/// Squared distance from `c` to the span of `family`.
pub fn distance_sq<K: Scalar>(c: &SparseVector<K>, family: &OrthogonalFamily<K>) -> Rational {
    family.distance_sq(c)
}
