//! Closed subspaces given by generators.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::arith::{GaussianRational, Rational, Scalar};
use crate::hilbert::{gram_schmidt, OrthogonalFamily, SparseVector};

/// The span of finitely many generators, with its orthogonal basis cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubspace<K> {
    generators: Vec<SparseVector<K>>,
    basis: OrthogonalFamily<K>,
}

impl<K: Scalar> FiniteSubspace<K> {
    pub fn new(generators: Vec<SparseVector<K>>) -> Self {
        let basis = gram_schmidt(&generators);
        Self { generators, basis }
    }

    /// The zero subspace.
    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    /// `span(e_0, ..., e_{n-1})`.
    pub fn coordinate(n: usize) -> Self {
        Self::new((0..n).map(SparseVector::basis).collect())
    }

    pub fn generators(&self) -> &[SparseVector<K>] {
        &self.generators
    }

    pub fn basis(&self) -> &OrthogonalFamily<K> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn distance_sq(&self, c: &SparseVector<K>) -> Rational {
        self.basis.distance_sq(c)
    }

    pub fn project(&self, c: &SparseVector<K>) -> SparseVector<K> {
        self.basis.project(c)
    }

    pub fn contains(&self, x: &SparseVector<K>) -> bool {
        self.distance_sq(x).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.vectors().iter().all(|b| other.contains(b))
    }

    /// Equality as subspaces (mutual containment).
    pub fn same_span(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// Largest coordinate index used by any generator.
    pub fn max_index(&self) -> Option<usize> {
        self.generators.iter().filter_map(SparseVector::max_index).max()
    }

    /// Every generator of `self` is orthogonal to every generator of `other`.
    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.generators.iter().all(|g| {
            other
                .generators
                .iter()
                .all(|h| crate::hilbert::inner_product(g, h).is_zero())
        })
    }

    /// `span(self ∪ other)`; the lattice join for orthogonal pairs.
    pub fn span_union(&self, other: &Self) -> Self {
        Self::new(
            self.generators
                .iter()
                .chain(&other.generators)
                .cloned()
                .collect(),
        )
    }
}

type Generator = dyn Fn(usize) -> SparseVector<GaussianRational> + Send + Sync;
type TailBound = dyn Fn(usize, &SparseVector<GaussianRational>) -> Rational + Send + Sync;

/// The closed span of a countable generator sequence.
///
/// Besides the generators the presentation carries a tail bound: for a unit
/// `c`, `tail(n, c)` bounds `d(c, L_n) - d(c, L)` where `L_n` is the span of
/// the first `n` generators. Certificates are only issued against `L_n` with
/// this margin, so every emitted certificate is valid for `L` itself.
#[derive(Clone)]
pub struct CountableSubspace {
    generator: Arc<Generator>,
    tail: Arc<TailBound>,
}

impl CountableSubspace {
    pub fn new<G, T>(generator: G, tail: T) -> Self
    where
        G: Fn(usize) -> SparseVector<GaussianRational> + Send + Sync + 'static,
        T: Fn(usize, &SparseVector<GaussianRational>) -> Rational + Send + Sync + 'static,
    {
        Self {
            generator: Arc::new(generator),
            tail: Arc::new(tail),
        }
    }

    /// `e_0, e_1, ...`: a presentation of the whole space. A finitely
    /// supported `c` lies in `L_n` once `n` exceeds its support.
    pub fn whole_space() -> Self {
        Self::new(SparseVector::basis, |n, c| {
            if c.max_index().is_none_or(|m| m < n) {
                Rational::zero()
            } else {
                Rational::from_integer(1.into())
            }
        })
    }

    pub fn generator(&self, n: usize) -> SparseVector<GaussianRational> {
        (self.generator)(n)
    }

    pub fn tail_bound(&self, n: usize, c: &SparseVector<GaussianRational>) -> Rational {
        (self.tail)(n, c)
    }

    /// `L_n`, the span of the first `n` generators.
    pub fn truncation(&self, n: usize) -> FiniteSubspace<GaussianRational> {
        FiniteSubspace::new((0..n).map(|i| self.generator(i)).collect())
    }
}

impl fmt::Debug for CountableSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CountableSubspace")
    }
}

/// An element of the Hilbert lattice, as a generator presentation.
#[derive(Clone, Debug)]
pub enum Subspace {
    Finite(FiniteSubspace<GaussianRational>),
    Countable(CountableSubspace),
}

impl From<FiniteSubspace<GaussianRational>> for Subspace {
    fn from(s: FiniteSubspace<GaussianRational>) -> Self {
        Subspace::Finite(s)
    }
}

impl From<CountableSubspace> for Subspace {
    fn from(s: CountableSubspace) -> Self {
        Subspace::Countable(s)
    }
}
