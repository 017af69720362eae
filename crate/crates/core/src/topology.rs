//! Convergence checks for operator and subspace sequences, and the three
//! discontinuity examples.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{real, GaussianRational, Rational};
use crate::codec::serde_rational;
use crate::error::{Error, Result};
use crate::hilbert::SparseVector;
use crate::lattice::{meet, ortho_complement_finite, FiniteSubspace};
use crate::spectral::BoundedOperator;
use crate::states::{pure_eval, PureState};

type Vector = SparseVector<GaussianRational>;
type Finite = FiniteSubspace<GaussianRational>;

/// `n -> T_n`, with an optional declared limit.
#[derive(Clone)]
pub struct OperatorSequence {
    at: Arc<dyn Fn(usize) -> BoundedOperator + Send + Sync>,
    pub limit: Option<BoundedOperator>,
}

impl OperatorSequence {
    pub fn new<F>(at: F) -> Self
    where
        F: Fn(usize) -> BoundedOperator + Send + Sync + 'static,
    {
        Self {
            at: Arc::new(at),
            limit: None,
        }
    }

    pub fn with_limit(mut self, limit: BoundedOperator) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn at(&self, n: usize) -> BoundedOperator {
        (self.at)(n)
    }

    /// `T_n = P_n`, the projection onto the first `n` coordinates.
    pub fn coordinate_projections() -> Self {
        Self::new(BoundedOperator::coordinate_projection).with_limit(BoundedOperator::identity())
    }

    /// `T_n = L^n`.
    pub fn left_shift_powers() -> Self {
        Self::new(BoundedOperator::left_shift).with_limit(BoundedOperator::zero())
    }

    /// `T_n = R^n`.
    pub fn right_shift_powers() -> Self {
        Self::new(BoundedOperator::right_shift)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub probe: usize,
    /// Smallest `n` such that `|T_m x - T x|^2 <= eps^2` for every
    /// `m` in `[n, N]`.
    pub n0: Option<usize>,
    #[serde(with = "serde_rational")]
    pub final_distance_sq: Rational,
    /// `max_n |T_n x|^2` over the window.
    #[serde(with = "serde_rational")]
    pub max_norm_sq: Rational,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SotReport {
    pub n0: Option<usize>,
    pub per_probe: Vec<ProbeReport>,
    pub verdict: bool,
    pub window: usize,
    pub coverage: String,
}

/// Strong-operator convergence of `T_n` to `T` on a finite set of probes,
/// over `n = 0..=N`. Norms are exact: the operators are banded, so every
/// `T_n x` is computed without truncation.
pub fn sot_check(
    seq: &OperatorSequence,
    limit: &BoundedOperator,
    probes: &[Vector],
    eps: &Rational,
    n_max: usize,
) -> Result<SotReport> {
    if !eps.is_positive() {
        return Err(Error::domain("eps must be positive"));
    }
    let eps_sq = eps * eps;
    let ops: Vec<BoundedOperator> = (0..=n_max).map(|n| seq.at(n)).collect();
    let mut per_probe = Vec::with_capacity(probes.len());
    for (i, x) in probes.iter().enumerate() {
        let target = limit.apply(x);
        let mut dist = Vec::with_capacity(ops.len());
        let mut max_norm_sq = Rational::zero();
        for t in &ops {
            let y = t.apply(x);
            max_norm_sq = max_norm_sq.max(y.norm_sq());
            dist.push((&y - &target).norm_sq());
        }
        let mut n0 = None;
        for n in (0..=n_max).rev() {
            if dist[n] <= eps_sq {
                n0 = Some(n);
            } else {
                break;
            }
        }
        per_probe.push(ProbeReport {
            probe: i,
            n0,
            final_distance_sq: dist[n_max].clone(),
            max_norm_sq,
            converged: n0.is_some(),
        });
    }
    let verdict = per_probe.iter().all(|p| p.converged);
    let n0 = if verdict {
        per_probe.iter().filter_map(|p| p.n0).max().or(Some(0))
    } else {
        None
    };
    Ok(SotReport {
        n0,
        per_probe,
        verdict,
        window: n_max,
        coverage: format!(
            "{} probe vector(s); convergence on all of l2 is not finitely checkable",
            probes.len()
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchroederRow {
    pub n: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchroederReport {
    pub rows: Vec<SchroederRow>,
    #[serde(with = "serde_rational")]
    pub limit_value: Rational,
    pub all_half: bool,
    pub conclusion: String,
}

/// `s_{e_0}(A_n)` for `A_n = span(e_0 + e_n)`, `n = 1..=max_n`.
///
/// Each value is exactly 1/2, while the limit `{0}` of the `A_n` (in the
/// topology of the certificate codes) has value 0: evaluation of a state
/// is not continuous in the subspace when subspaces carry that topology.
pub fn demo_schroeder(max_n: usize) -> Result<SchroederReport> {
    if max_n == 0 {
        return Err(Error::domain("max_n must be at least 1"));
    }
    let e0 = PureState::basis(0);
    let rows: Vec<SchroederRow> = (1..=max_n)
        .map(|n| {
            let a_n = FiniteSubspace::new(vec![&Vector::basis(0) + &Vector::basis(n)]);
            SchroederRow {
                n,
                value: pure_eval(&e0, &a_n),
            }
        })
        .collect();
    let half = Rational::new(1.into(), 2.into());
    let all_half = rows.iter().all(|r| r.value == half);
    let limit_value = pure_eval(&e0, &FiniteSubspace::zero());
    Ok(SchroederReport {
        rows,
        limit_value,
        all_half,
        conclusion: "s(A_n)(e_0) = 1/2 for every n but s({0})(e_0) = 0: \
                     state evaluation is not continuous in the subspace"
            .to_string(),
    })
}

/// Weights `w_0, ..., w_K` of the surrogate vector `sum w_k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weights {
    /// `w_k = ratio^k`.
    Geometric(Rational),
    Explicit(Vec<Rational>),
}

impl Weights {
    fn take(&self, k_max: usize) -> Result<Vec<Rational>> {
        let w: Vec<Rational> = match self {
            Weights::Geometric(r) => {
                let mut out = Vec::with_capacity(k_max + 1);
                let mut p = Rational::one();
                for _ in 0..=k_max {
                    out.push(p.clone());
                    p *= r;
                }
                out
            }
            Weights::Explicit(w) => {
                if w.len() != k_max + 1 {
                    return Err(Error::domain(format!(
                        "need {} weights, got {}",
                        k_max + 1,
                        w.len()
                    )));
                }
                w.clone()
            }
        };
        if let Some(k) = w.iter().position(|x| x.is_zero()) {
            return Err(Error::domain(format!("weight {k} is zero")));
        }
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinRow {
    pub n: usize,
    pub meet_dim: usize,
    pub meet_is_zero: bool,
    pub meet_is_p: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub k: usize,
    pub rows: Vec<JoinRow>,
    /// `P ⊆ span(e_0, ..., e_K)`, the surrogate of `⋁ Q_n`.
    pub p_in_join: bool,
    pub zero_below_k: bool,
    pub note: String,
}

/// `P = span(sum_{k<=K} w_k e_k)` against `Q_n = span(e_0, ..., e_n)`.
///
/// For `n < K` the meet is `{0}`, yet `P` lies in the join of all `Q_n`:
/// `P ∧ ⋁ Q_n = P` while `⋁ (P ∧ Q_n) = {0}`.
pub fn demo_join_discontinuity(max_n: usize, k: usize, weights: &Weights) -> Result<JoinReport> {
    let w = weights.take(k)?;
    let p_vec = Vector::from_dense(w.into_iter().map(real));
    let p = FiniteSubspace::new(vec![p_vec]);
    let rows: Vec<JoinRow> = (0..=max_n)
        .map(|n| {
            let q = Finite::coordinate(n + 1);
            let m = meet(&p, &q);
            JoinRow {
                n,
                meet_dim: m.dim(),
                meet_is_zero: m.is_zero(),
                meet_is_p: m.same_span(&p),
            }
        })
        .collect();
    let zero_below_k = rows.iter().filter(|r| r.n < k).all(|r| r.meet_is_zero);
    let p_in_join = p.is_subspace_of(&Finite::coordinate(k + 1));
    Ok(JoinReport {
        k,
        rows,
        p_in_join,
        zero_below_k,
        note: format!(
            "finite surrogate with K = {k}: the full statement needs P of infinite \
             support; the checked content is meet(P, Q_n) = {{0}} for n < K"
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiorthRow {
    pub n: usize,
    pub points: usize,
    pub biorth_is_line: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiorthReport {
    pub rows: Vec<BiorthRow>,
    pub all_line: bool,
    /// The intersection over `n = 1..=max_n + 1` of the windows
    /// `{m x : n <= m <= max_n}` is empty.
    pub intersection_empty: bool,
    pub note: String,
}

/// `C_n = { m x : m >= n }` for a fixed unit `x`, truncated to
/// `n <= m <= 2n`. Each `C_n^⊥⊥` is the line through `x`, while the sets
/// themselves shrink to nothing.
pub fn demo_biorth_discontinuity(max_n: usize, x: &Vector) -> Result<BiorthReport> {
    crate::lattice::certificate::check_unit(x, "x")?;
    let ambient = x.max_index().map_or(1, |m| m + 1);
    let line = FiniteSubspace::new(vec![x.clone()]);
    let mut rows = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let points: Vec<Vector> = (n..=2 * n)
            .map(|m| x.scale_rational(&Rational::from_integer(m.into())))
            .collect();
        let c = FiniteSubspace::new(points.clone());
        let perp = ortho_complement_finite(&c, ambient)?;
        let biorth = ortho_complement_finite(&perp, ambient)?;
        rows.push(BiorthRow {
            n,
            points: points.len(),
            biorth_is_line: biorth.same_span(&line),
        });
    }
    let all_line = rows.iter().all(|r| r.biorth_is_line);
    let intersection_empty = (1..=max_n + 1)
        .try_fold((1usize, max_n), |(lo, hi), n| {
            let lo = lo.max(n);
            (lo <= hi).then_some((lo, hi))
        })
        .is_none();
    Ok(BiorthReport {
        rows,
        all_line,
        intersection_empty,
        note: "C_n^⊥⊥ is the same line for every n although the C_n decrease to the empty set"
            .to_string(),
    })
}

/// A probe `(x_n)` with declared limit `x_inf`.
#[derive(Clone)]
pub struct VectorProbe {
    at: Arc<dyn Fn(usize) -> Vector + Send + Sync>,
    pub limit: Vector,
}

impl VectorProbe {
    pub fn new<F>(at: F, limit: Vector) -> Self
    where
        F: Fn(usize) -> Vector + Send + Sync + 'static,
    {
        Self {
            at: Arc::new(at),
            limit,
        }
    }

    pub fn constant(x: Vector) -> Self {
        let y = x.clone();
        Self::new(move |_| y.clone(), x)
    }

    pub fn at(&self, n: usize) -> Vector {
        (self.at)(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeProbeReport {
    pub probe: usize,
    pub members: Vec<usize>,
    pub frequent: bool,
    pub limit_in_subspace: bool,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub per_probe: Vec<LatticeProbeReport>,
    pub consistent: bool,
    pub window: usize,
}

/// Tests `L_n -> L` on probes: if `x_n ∈ L_n` for infinitely many `n`, the
/// limit `x_inf` must lie in `L`.
///
/// "Infinitely many" is read on the window `0..=N` as "at some `n` in the
/// upper half `(N/2, N]`".
pub fn lattice_converge_check<F>(
    seq: F,
    limit: &Finite,
    probes: &[VectorProbe],
    n_max: usize,
) -> LatticeReport
where
    F: Fn(usize) -> Finite,
{
    let subspaces: Vec<Finite> = (0..=n_max).map(&seq).collect();
    let per_probe: Vec<LatticeProbeReport> = probes
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let members: Vec<usize> = (0..=n_max)
                .filter(|&n| subspaces[n].contains(&p.at(n)))
                .collect();
            let frequent = members.iter().any(|&n| 2 * n > n_max);
            let limit_in_subspace = limit.contains(&p.limit);
            LatticeProbeReport {
                probe: i,
                members,
                frequent,
                limit_in_subspace,
                violation: frequent && !limit_in_subspace,
            }
        })
        .collect();
    LatticeReport {
        consistent: per_probe.iter().all(|p| !p.violation),
        per_probe,
        window: n_max,
    }
}
