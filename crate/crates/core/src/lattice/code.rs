//! Certificate codes of closed subspaces.
//!
//! A code of `L` is a stream of certificates `(c, r)` with `d(c, L) > r`
//! that eventually lists every valid rational candidate. Since
//! `d(c, L) > r` is also the defining property of the distance function of
//! `L`, one and the same stream codes `L` and its distance function.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::certificate::{certificate_excludes, Certificate, Vector};
use super::enumerate::{Candidate, DirectionTable, GridCursor};
use super::subspace::{CountableSubspace, FiniteSubspace, Subspace};
use crate::arith::rational::pow2_neg;
use crate::arith::{GaussianRational, Rational, RationalInterval, Semidecision, Verdict};
use crate::error::{Error, Result};
use crate::hilbert::OrthogonalFamily;

/// Bits of slack below `d(c, L)` for the tight certificate of each direction.
pub const TIGHT_BITS: u32 = 48;

type RoundSource = dyn Fn() -> Box<dyn Iterator<Item = Vec<Certificate>> + Send> + Send + Sync;

/// A re-playable certificate stream, produced in rounds.
///
/// A round may be empty: the code of the whole space emits nothing at all,
/// so bounded consumers should count rounds rather than certificates.
#[derive(Clone)]
pub struct SubspaceCode {
    source: Arc<RoundSource>,
}

impl SubspaceCode {
    /// `make` must return an infinite iterator of rounds.
    pub fn from_rounds<F, I>(make: F) -> Self
    where
        F: Fn() -> I + Send + Sync + 'static,
        I: Iterator<Item = Vec<Certificate>> + Send + 'static,
    {
        Self {
            source: Arc::new(move || Box::new(make())),
        }
    }

    pub fn rounds(&self) -> Box<dyn Iterator<Item = Vec<Certificate>> + Send> {
        (self.source)()
    }

    /// The flattened stream. Does not terminate on a code that stops emitting.
    pub fn certificates(&self) -> impl Iterator<Item = Certificate> + Send {
        self.rounds().flatten()
    }

    /// Certificates from the first `rounds` rounds.
    pub fn prefix(&self, rounds: usize) -> Vec<Certificate> {
        self.rounds().take(rounds).flatten().collect()
    }
}

impl fmt::Debug for SubspaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SubspaceCode")
    }
}

/// Largest rational `r >= 0` with `r < d` given `d^2`, at `TIGHT_BITS`
/// below the rounded root; `None` when `d` is too small.
fn tight_radius(d_sq: &Rational, margin: &Rational) -> Option<Rational> {
    if !d_sq.is_positive() {
        return None;
    }
    let eps = pow2_neg(TIGHT_BITS);
    let lo = RationalInterval::point(d_sq.clone()).sqrt(&eps).ok()?.lo().clone();
    let r = lo - margin - eps;
    (!r.is_negative()).then_some(r)
}

/// Codes `L`.
///
/// Round `m` of the stream does two things. It takes candidate slot `m`
/// from the fixed dovetail and emits it when valid. It then takes direction
/// `m` and emits a tight certificate for it, with radius within `2^-47` of
/// `d(c_m, L)`. For a countable presentation, slot candidates wait in a
/// pending list and are re-checked each round against `L_{m+1}` with the
/// declared tail margin.
pub fn encode(subspace: &Subspace) -> SubspaceCode {
    match subspace {
        Subspace::Finite(f) => encode_finite(f.clone()),
        Subspace::Countable(c) => encode_countable(c.clone()),
    }
}

fn encode_finite(l: FiniteSubspace<GaussianRational>) -> SubspaceCode {
    let l = Arc::new(l);
    SubspaceCode::from_rounds(move || {
        let l = Arc::clone(&l);
        let mut table = DirectionTable::new();
        let mut cursor = GridCursor::new();
        let mut dist: HashMap<usize, Rational> = HashMap::new();
        let mut round = 0usize;
        let zero = Rational::zero();
        std::iter::from_fn(move || {
            let cand = cursor.next(&mut table);
            let d_sq = dist
                .entry(cand.direction)
                .or_insert_with(|| l.distance_sq(&cand.c))
                .clone();
            let mut out = Vec::with_capacity(2);
            if &cand.r * &cand.r < d_sq {
                out.push(Certificate { c: cand.c, r: cand.r });
            }
            let c = table.get(round).unit.clone();
            let d_sq = dist
                .entry(round)
                .or_insert_with(|| l.distance_sq(&c))
                .clone();
            if let Some(r) = tight_radius(&d_sq, &zero) {
                out.push(Certificate { c, r });
            }
            round += 1;
            Some(out)
        })
    })
}

fn encode_countable(l: CountableSubspace) -> SubspaceCode {
    SubspaceCode::from_rounds(move || {
        let l = l.clone();
        let mut table = DirectionTable::new();
        let mut cursor = GridCursor::new();
        let mut pending: Vec<Candidate> = Vec::new();
        let mut truncation = OrthogonalFamily::empty();
        let mut level = 0usize;
        std::iter::from_fn(move || {
            truncation.push(&l.generator(level));
            level += 1;
            pending.push(cursor.next(&mut table));
            let mut out = Vec::new();
            pending.retain(|cand| {
                let margin = l.tail_bound(level, &cand.c);
                let reach = &cand.r + &margin;
                if &reach * &reach < truncation.distance_sq(&cand.c) {
                    out.push(Certificate {
                        c: cand.c.clone(),
                        r: cand.r.clone(),
                    });
                    false
                } else {
                    true
                }
            });
            let c = table.get(level - 1).unit.clone();
            let margin = l.tail_bound(level, &c);
            if let Some(r) = tight_radius(&truncation.distance_sq(&c), &margin) {
                out.push(Certificate { c, r });
            }
            Some(out)
        })
    })
}

/// An enclosure of `d(c, L)` of width at most `eps`.
pub type DistanceOracle = dyn Fn(&Vector, &Rational) -> RationalInterval + Send + Sync;

/// The code of a distance function: certificates `(c, r)` with `r < d(c)`.
///
/// Slot candidates are confirmed once an enclosure of `d(c)` at precision
/// `2^-(m+8)` lies strictly above `r`; direction `m` also receives the tight
/// certificate `lo - 2^-48` from an enclosure at `2^-48`.
pub fn distance_code(distance: Arc<DistanceOracle>) -> SubspaceCode {
    SubspaceCode::from_rounds(move || {
        let distance = Arc::clone(&distance);
        let mut table = DirectionTable::new();
        let mut cursor = GridCursor::new();
        let mut pending: Vec<Candidate> = Vec::new();
        let mut round = 0u32;
        std::iter::from_fn(move || {
            pending.push(cursor.next(&mut table));
            let eps = pow2_neg(round + 8);
            let mut out = Vec::new();
            pending.retain(|cand| {
                if distance(&cand.c, &eps).lo() > &cand.r {
                    out.push(Certificate {
                        c: cand.c.clone(),
                        r: cand.r.clone(),
                    });
                    false
                } else {
                    true
                }
            });
            let c = table.get(round as usize).unit.clone();
            let tight = pow2_neg(TIGHT_BITS);
            let r = distance(&c, &tight).lo() - &tight;
            if !r.is_negative() {
                out.push(Certificate { c, r });
            }
            round += 1;
            Some(out)
        })
    })
}

/// Distance oracle of a finite subspace, via interval square roots.
pub fn finite_distance_oracle(l: FiniteSubspace<GaussianRational>) -> Arc<DistanceOracle> {
    Arc::new(move |c, eps| {
        RationalInterval::point(l.distance_sq(c))
            .sqrt(eps)
            .expect("squared distances are non-negative")
    })
}

/// Semidecides `x ∉ L` from a code of `L`; fuel `f` reads `f` rounds.
pub fn semidecide_not_member(code: &SubspaceCode, x: &Vector) -> Result<Semidecision> {
    if x.is_zero() {
        return Err(Error::domain("the zero vector belongs to every subspace"));
    }
    let code = code.clone();
    let x = x.clone();
    let n = x.norm_sq();
    Ok(Semidecision::new(move |fuel| {
        let hit = code
            .rounds()
            .take(fuel as usize)
            .flatten()
            .any(|cert| certificate_excludes(&cert, &x, &n));
        if hit {
            Verdict::Confirmed
        } else {
            Verdict::Unknown
        }
    }))
}
