//! Bounded self-adjoint operators on `l2` given by banded matrices.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::arith::{abs_sq, checked_div, real, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::hilbert::SparseVector;

type Vector = SparseVector<GaussianRational>;
type EntryFn = dyn Fn(usize, usize) -> GaussianRational + Send + Sync;

/// How an operator is described.
#[derive(Clone)]
pub enum OperatorKind {
    /// `A e_i = eigs[i] e_i`, and `rest * e_i` past the list.
    Diagonal { eigs: Vec<Rational>, rest: Rational },
    /// A Hermitian `M x M` block followed by `rest * I`.
    Finite {
        matrix: Vec<Vec<GaussianRational>>,
        rest: Rational,
    },
    /// Powers of the right or left shift. Not self-adjoint.
    Shift { right: bool, power: usize },
    /// An entry oracle vanishing off the band `|i - j| <= band`.
    Banded { band: usize, entry: Arc<EntryFn> },
}

/// An operator of norm at most 1 with a known band width.
///
/// The band makes `A x` finitely supported for finitely supported `x`, and
/// it gives the column tails `sum_{i >= n} |a_ij|^2` in closed form.
#[derive(Clone)]
pub struct BoundedOperator {
    kind: OperatorKind,
}

impl fmt::Debug for BoundedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OperatorKind::Diagonal { eigs, rest } => f
                .debug_struct("Diagonal")
                .field("eigs", eigs)
                .field("rest", rest)
                .finish(),
            OperatorKind::Finite { matrix, rest } => f
                .debug_struct("Finite")
                .field("dim", &matrix.len())
                .field("rest", rest)
                .finish(),
            OperatorKind::Shift { right, power } => f
                .debug_struct("Shift")
                .field("right", right)
                .field("power", power)
                .finish(),
            OperatorKind::Banded { band, .. } => {
                f.debug_struct("Banded").field("band", band).finish()
            }
        }
    }
}

impl PartialEq for BoundedOperator {
    /// Structural; banded oracles are equal only when they share the oracle.
    fn eq(&self, other: &Self) -> bool {
        use OperatorKind::*;
        match (&self.kind, &other.kind) {
            (Diagonal { eigs: a, rest: r }, Diagonal { eigs: b, rest: s }) => a == b && r == s,
            (Finite { matrix: a, rest: r }, Finite { matrix: b, rest: s }) => a == b && r == s,
            (Shift { right: a, power: p }, Shift { right: b, power: q }) => a == b && p == q,
            (Banded { band: a, entry: f }, Banded { band: b, entry: g }) => {
                a == b && Arc::ptr_eq(f, g)
            }
            _ => false,
        }
    }
}

fn check_unit_interval(t: &Rational, what: &str) -> Result<()> {
    if t.abs() > Rational::one() {
        return Err(Error::domain(format!("{what} {t} outside [-1, 1]")));
    }
    Ok(())
}

/// Whether a Hermitian matrix is positive semidefinite, by exact symmetric
/// elimination.
pub fn is_positive_semidefinite(matrix: &[Vec<GaussianRational>]) -> bool {
    let n = matrix.len();
    let mut a: Vec<Vec<GaussianRational>> = matrix.to_vec();
    for k in 0..n {
        let d = a[k][k].re.clone();
        if d.is_negative() {
            return false;
        }
        if d.is_zero() {
            if (k + 1..n).any(|j| !a[k][j].is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / real(d.clone());
            for j in k + 1..n {
                let sub = &factor * &a[k][j];
                a[i][j] = &a[i][j] - &sub;
            }
        }
    }
    true
}

fn matmul(a: &[Vec<GaussianRational>], b: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(GaussianRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// `A x` truncated to the first `n` coordinates, with a bound on the
/// squared norm of what was dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated {
    pub y: Vector,
    /// Upper bound on `|A x - y|^2`.
    pub err_sq: Rational,
}

impl BoundedOperator {
    pub fn diagonal(eigs: Vec<Rational>) -> Result<Self> {
        Self::diagonal_with_rest(eigs, Rational::zero())
    }

    pub fn diagonal_with_rest(eigs: Vec<Rational>, rest: Rational) -> Result<Self> {
        for e in &eigs {
            check_unit_interval(e, "eigenvalue")?;
        }
        check_unit_interval(&rest, "eigenvalue")?;
        Ok(Self {
            kind: OperatorKind::Diagonal { eigs, rest },
        })
    }

    pub fn identity() -> Self {
        Self {
            kind: OperatorKind::Diagonal {
                eigs: Vec::new(),
                rest: Rational::one(),
            },
        }
    }

    pub fn zero() -> Self {
        Self {
            kind: OperatorKind::Diagonal {
                eigs: Vec::new(),
                rest: Rational::zero(),
            },
        }
    }

    /// The projection onto `span(e_0, ..., e_{n-1})`.
    pub fn coordinate_projection(n: usize) -> Self {
        Self {
            kind: OperatorKind::Diagonal {
                eigs: vec![Rational::one(); n],
                rest: Rational::zero(),
            },
        }
    }

    /// A Hermitian block of norm at most 1, then `rest * I`.
    ///
    /// Both conditions are checked exactly; the norm through `I - M^2 >= 0`.
    pub fn finite(matrix: Vec<Vec<GaussianRational>>, rest: Rational) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::domain("operator block must be square"));
        }
        for i in 0..n {
            for j in 0..=i {
                if matrix[i][j] != matrix[j][i].conj() {
                    return Err(Error::domain(format!(
                        "block is not self-adjoint at ({i}, {j})"
                    )));
                }
            }
        }
        check_unit_interval(&rest, "diagonal tail")?;
        let sq = matmul(&matrix, &matrix);
        let gap: Vec<Vec<GaussianRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let id = if i == j { GaussianRational::one() } else { GaussianRational::zero() };
                        id - &sq[i][j]
                    })
                    .collect()
            })
            .collect();
        if !is_positive_semidefinite(&gap) {
            return Err(Error::domain("block has norm greater than 1"));
        }
        Ok(Self {
            kind: OperatorKind::Finite { matrix, rest },
        })
    }

    /// `M / c` for a Hermitian block known to have norm at most `c`.
    pub fn finite_rescaled(matrix: Vec<Vec<GaussianRational>>, c: &Rational) -> Result<Self> {
        let inv = real(checked_div(&Rational::one(), c)?);
        let scaled = matrix
            .into_iter()
            .map(|row| row.into_iter().map(|z| z * &inv).collect())
            .collect();
        Self::finite(scaled, Rational::zero())
    }

    pub fn right_shift(power: usize) -> Self {
        Self {
            kind: OperatorKind::Shift { right: true, power },
        }
    }

    pub fn left_shift(power: usize) -> Self {
        Self {
            kind: OperatorKind::Shift { right: false, power },
        }
    }

    /// An infinite banded operator. Self-adjointness and the norm bound are
    /// the caller's claim; see [`BoundedOperator::check_self_adjoint`].
    pub fn banded<F>(band: usize, entry: F) -> Self
    where
        F: Fn(usize, usize) -> GaussianRational + Send + Sync + 'static,
    {
        Self {
            kind: OperatorKind::Banded {
                band,
                entry: Arc::new(entry),
            },
        }
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn entry(&self, i: usize, j: usize) -> GaussianRational {
        match &self.kind {
            OperatorKind::Diagonal { eigs, rest } => {
                if i != j {
                    GaussianRational::zero()
                } else {
                    real(eigs.get(i).unwrap_or(rest).clone())
                }
            }
            OperatorKind::Finite { matrix, rest } => {
                let m = matrix.len();
                if i < m && j < m {
                    matrix[i][j].clone()
                } else if i == j {
                    real(rest.clone())
                } else {
                    GaussianRational::zero()
                }
            }
            OperatorKind::Shift { right, power } => {
                let hit = if *right { i == j + power } else { j == i + power };
                if hit {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                }
            }
            OperatorKind::Banded { band, entry } => {
                if i.abs_diff(j) > *band {
                    GaussianRational::zero()
                } else {
                    entry(i, j)
                }
            }
        }
    }

    pub fn band(&self) -> usize {
        match &self.kind {
            OperatorKind::Diagonal { .. } => 0,
            OperatorKind::Finite { matrix, .. } => matrix.len().saturating_sub(1),
            OperatorKind::Shift { power, .. } => *power,
            OperatorKind::Banded { band, .. } => *band,
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        match &self.kind {
            OperatorKind::Shift { power, .. } => *power == 0,
            _ => true,
        }
    }

    /// Checks `a_ij = conj(a_ji)` on the `n x n` corner.
    pub fn check_self_adjoint(&self, n: usize) -> Result<()> {
        for i in 0..n {
            for j in 0..=i {
                if self.entry(i, j) != self.entry(j, i).conj() {
                    return Err(Error::domain(format!("not self-adjoint at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    /// `sum_{i >= n} |a_ij|^2`.
    pub fn column_tail(&self, j: usize, n: usize) -> Rational {
        let b = self.band();
        let lo = n.max(j.saturating_sub(b));
        (lo..=j + b).map(|i| abs_sq(&self.entry(i, j))).sum()
    }

    /// `A x`, exactly; the band keeps the support finite.
    pub fn apply(&self, x: &Vector) -> Vector {
        let b = self.band();
        let mut out = Vector::zero();
        for (j, xj) in x.entries() {
            for i in j.saturating_sub(b)..=j + b {
                let a = self.entry(i, j);
                if !a.is_zero() {
                    out = out.axpy(&a, &Vector::basis(i).scale(xj));
                }
            }
        }
        out
    }

    /// The `n x n` corner applied to `x` restricted to its first `n`
    /// coordinates.
    ///
    /// With `x = u + v`, `u` the part below `n`: the rows past `n` of `A u`
    /// have squared norm at most `|u|^2 sum_j column_tail(j, n)`, and
    /// `|A v| <= |v|`; the two are combined by `(a + b)^2 <= 2 a^2 + 2 b^2`.
    pub fn apply_truncated(&self, x: &Vector, n: usize) -> Truncated {
        let u = x.truncate(n);
        let v = x.tail(n);
        let y = self.apply(&u).truncate(n);
        let rows: Rational = u.support().map(|j| self.column_tail(j, n)).sum();
        let a = u.norm_sq() * rows;
        let b = v.norm_sq();
        let err_sq = if b.is_zero() {
            a
        } else if a.is_zero() {
            b
        } else {
            (a + b) * Rational::from_integer(2.into())
        };
        Truncated { y, err_sq }
    }

    /// `<x|A^k x>` for `k = 0..=n`, using `<x|A^(a+b) x> = <A^a x|A^b x>`.
    pub fn moments(&self, x: &Vector, n: usize) -> Vec<Rational> {
        let half = n / 2 + 1;
        let mut powers = vec![x.clone()];
        for k in 1..=half {
            let next = self.apply(&powers[k - 1]);
            powers.push(next);
        }
        (0..=n)
            .map(|k| {
                let a = k / 2;
                let b = k - a;
                crate::hilbert::inner_product(&powers[a], &powers[b]).re
            })
            .collect()
    }

    /// Hermitian block and trailing diagonal value, when the operator has
    /// one.
    pub fn block(&self) -> Option<(Vec<Vec<GaussianRational>>, Rational)> {
        match &self.kind {
            OperatorKind::Diagonal { eigs, rest } => {
                let n = eigs.len();
                let m = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if i == j {
                                    real(eigs[i].clone())
                                } else {
                                    GaussianRational::zero()
                                }
                            })
                            .collect()
                    })
                    .collect();
                Some((m, rest.clone()))
            }
            OperatorKind::Finite { matrix, rest } => Some((matrix.clone(), rest.clone())),
            _ => None,
        }
    }
}
