//! Pure and mixed states as functionals on subspaces.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::arith::rational::pow2_neg;
use crate::arith::{GaussianRational, Rational, RationalInterval, UpperReal};
use crate::error::{Error, Result};
use crate::hilbert::{inner_product, SparseVector};
use crate::lattice::certificate::check_unit;
use crate::lattice::{FiniteSubspace, SubspaceCode};

type Vector = SparseVector<GaussianRational>;
type Finite = FiniteSubspace<GaussianRational>;

/// Precision of the upper bound on `|x - c|` used by code evaluation.
const NORM_BITS: u32 = 64;

/// The state `s_x(L) = <x|P_L x>` of a unit vector `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureState {
    x: Vector,
}

impl PureState {
    pub fn new(x: Vector) -> Result<Self> {
        check_unit(&x, "state vector")?;
        Ok(Self { x })
    }

    pub fn basis(n: usize) -> Self {
        Self { x: Vector::basis(n) }
    }

    pub fn vector(&self) -> &Vector {
        &self.x
    }
}

/// `s_x(L) = 1 - d(x, L)^2`, exactly.
pub fn pure_eval(s: &PureState, l: &Finite) -> Rational {
    Rational::one() - l.distance_sq(&s.x)
}

/// Upper bound on `s_x(L)` from one certificate: `d(x, L) > r - |x - c|`.
fn bound_from_certificate(x: &Vector, c: &Vector, r: &Rational) -> Rational {
    let eps = pow2_neg(NORM_BITS);
    let gap = RationalInterval::point((x - c).norm_sq())
        .sqrt(&eps)
        .expect("norms are non-negative")
        .hi()
        .clone();
    let lower = r - gap;
    if lower.is_positive() {
        Rational::one() - &lower * &lower
    } else {
        Rational::one()
    }
}

/// `s_x` on a coded subspace: one upper bound per round of the code.
pub fn pure_eval_code(s: &PureState, code: &SubspaceCode) -> UpperReal {
    let x = s.x.clone();
    let code = code.clone();
    UpperReal::from_stream(Rational::one(), move || {
        let x = x.clone();
        code.rounds().map(move |round| {
            round
                .iter()
                .map(|cert| bound_from_certificate(&x, &cert.c, &cert.r))
                .min()
                .unwrap_or_else(Rational::one)
        })
    })
}

type TermFn = dyn Fn(usize) -> Option<(Rational, Vector)> + Send + Sync;
type TailFn = dyn Fn(usize) -> Rational + Send + Sync;

/// How a [`State`] was built; oracle states have no serial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateShape {
    Finite(Vec<(Rational, Vector)>),
    Geometric { ratio: Rational, prefix: Vec<Vector> },
    Oracle,
}

/// A countable convex combination `sum_n lambda_n s_{b_n}`.
///
/// `tail(n)` bounds the weight of the terms from index `n` on; a finite
/// state has `terms(n) = None` past its length and tail 0 there.
#[derive(Clone)]
pub struct State {
    terms: Arc<TermFn>,
    tail: Arc<TailFn>,
    len: Option<usize>,
    shape: StateShape,
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("State").field("len", &self.len).finish()
    }
}

fn check_orthonormal_prefix(terms: &[(Rational, Vector)]) -> Result<()> {
    for (i, (w, b)) in terms.iter().enumerate() {
        if w.is_negative() {
            return Err(Error::domain(format!("negative weight {w} at term {i}")));
        }
        check_unit(b, "state term")?;
        for (j, (_, c)) in terms[..i].iter().enumerate() {
            if !inner_product(c, b).is_zero() {
                return Err(Error::domain(format!("terms {j} and {i} are not orthogonal")));
            }
        }
    }
    Ok(())
}

impl State {
    /// Finitely many terms; the weights must sum to 1.
    pub fn finite(terms: Vec<(Rational, Vector)>) -> Result<Self> {
        check_orthonormal_prefix(&terms)?;
        let total: Rational = terms.iter().map(|(w, _)| w.clone()).sum();
        if !total.is_one() {
            return Err(Error::domain(format!("weights sum to {total}, not 1")));
        }
        let len = terms.len();
        let shape = StateShape::Finite(terms.clone());
        let weights: Vec<Rational> = terms.iter().map(|(w, _)| w.clone()).collect();
        let terms = Arc::new(terms);
        Ok(Self {
            terms: Arc::new(move |n| terms.get(n).cloned()),
            tail: Arc::new(move |n| weights.iter().skip(n).cloned().sum()),
            len: Some(len),
            shape,
        })
    }

    pub fn pure(s: &PureState) -> Self {
        Self::finite(vec![(Rational::one(), s.x.clone())]).expect("a unit vector is a state")
    }

    /// Weights `(1 - rho) rho^n`.
    ///
    /// The first vectors are `prefix`; after them come the basis vectors
    /// `e_m, e_{m+1}, ...` with `m` past the support of the prefix.
    pub fn geometric(ratio: Rational, prefix: Vec<Vector>) -> Result<Self> {
        if !ratio.is_positive() || ratio >= Rational::one() {
            return Err(Error::domain(format!("ratio {ratio} outside (0, 1)")));
        }
        let weighted: Vec<(Rational, Vector)> = prefix
            .iter()
            .enumerate()
            .map(|(k, b)| (geometric_weight(&ratio, k), b.clone()))
            .collect();
        check_orthonormal_prefix(&weighted)?;
        let offset = prefix
            .iter()
            .filter_map(|b| b.max_index())
            .max()
            .map_or(0, |m| m + 1);
        let shape = StateShape::Geometric {
            ratio: ratio.clone(),
            prefix: prefix.clone(),
        };
        let prefix = Arc::new(prefix);
        let r = ratio.clone();
        Ok(Self {
            terms: Arc::new(move |n| {
                let b = match prefix.get(n) {
                    Some(b) => b.clone(),
                    None => Vector::basis(offset + n - prefix.len()),
                };
                Some((geometric_weight(&r, n), b))
            }),
            tail: Arc::new(move |n| pow(&ratio, n)),
            len: None,
            shape,
        })
    }

    /// A state from a term oracle and a tail bound, checked on `check` terms.
    pub fn from_fn<T, U>(terms: T, tail: U, check: usize) -> Result<Self>
    where
        T: Fn(usize) -> Option<(Rational, Vector)> + Send + Sync + 'static,
        U: Fn(usize) -> Rational + Send + Sync + 'static,
    {
        let s = Self {
            terms: Arc::new(terms),
            tail: Arc::new(tail),
            len: None,
            shape: StateShape::Oracle,
        };
        s.check_prefix(check)?;
        Ok(s)
    }

    pub fn shape(&self) -> &StateShape {
        &self.shape
    }

    /// Number of terms; `None` for an infinite combination.
    pub fn term_count(&self) -> Option<usize> {
        self.len
    }

    pub fn term(&self, n: usize) -> Option<(Rational, Vector)> {
        (self.terms)(n)
    }

    pub fn terms(&self, n: usize) -> Vec<(Rational, Vector)> {
        (0..n).map_while(|k| self.term(k)).collect()
    }

    pub fn tail(&self, n: usize) -> Rational {
        (self.tail)(n)
    }

    /// Checks the first `n` terms: non-negative weights, orthonormal
    /// vectors, and weight plus tail never exceeding 1.
    pub fn check_prefix(&self, n: usize) -> Result<()> {
        let terms = self.terms(n);
        check_orthonormal_prefix(&terms)?;
        let mut seen = Rational::zero();
        for (k, (w, _)) in terms.iter().enumerate() {
            if &seen + self.tail(k) < Rational::one() {
                return Err(Error::domain(format!(
                    "tail bound at {k} leaves mass missing"
                )));
            }
            seen += w;
        }
        if seen > Rational::one() {
            return Err(Error::domain(format!("weights exceed 1: {seen}")));
        }
        Ok(())
    }
}

fn pow(r: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * r)
}

fn geometric_weight(r: &Rational, k: usize) -> Rational {
    (Rational::one() - r) * pow(r, k)
}

/// `[sum_{k<n} lambda_k s_{b_k}(L), same + tail(n)]`.
pub fn mixed_eval(s: &State, l: &Finite, n: usize) -> Result<RationalInterval> {
    if n == 0 {
        return Err(Error::precondition("prefix length must be at least 1"));
    }
    let lo: Rational = s
        .terms(n)
        .iter()
        .map(|(w, b)| w * (Rational::one() - l.distance_sq(b)))
        .sum();
    let hi = &lo + s.tail(n);
    RationalInterval::new(lo, hi)
}

/// A mixed state on a coded subspace: the weighted sum of the per-term
/// upper reals plus the tail weight.
pub fn mixed_eval_code(s: &State, code: &SubspaceCode, n: usize) -> Result<UpperReal> {
    if n == 0 {
        return Err(Error::precondition("prefix length must be at least 1"));
    }
    let mut acc = UpperReal::constant(s.tail(n));
    for (w, b) in s.terms(n) {
        let term = pure_eval_code(&PureState { x: b }, code).scale(&w);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// `s(P)`, `s(Q)` and `s(P v Q)` for orthogonal `P`, `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityReport {
    pub s_p: RationalInterval,
    pub s_q: RationalInterval,
    pub s_join: RationalInterval,
    /// All three values are exact (no tail weight left).
    pub exact: bool,
    /// The lower ends satisfy `s(P) + s(Q) = s(P v Q)` exactly; for an
    /// exact report this is the full identity.
    pub holds: bool,
}

/// Checks `s(P v Q) = s(P) + s(Q)` where `P v Q` is the span of both
/// generator lists.
pub fn check_additivity(s: &State, p: &Finite, q: &Finite, n: usize) -> Result<AdditivityReport> {
    if !p.is_orthogonal_to(q) {
        return Err(Error::precondition("P and Q are not orthogonal"));
    }
    let join = p.span_union(q);
    let s_p = mixed_eval(s, p, n)?;
    let s_q = mixed_eval(s, q, n)?;
    let s_join = mixed_eval(s, &join, n)?;
    let exact = s.tail(n).is_zero();
    let holds = s_p.lo() + s_q.lo() == *s_join.lo();
    Ok(AdditivityReport {
        s_p,
        s_q,
        s_join,
        exact,
        holds,
    })
}
