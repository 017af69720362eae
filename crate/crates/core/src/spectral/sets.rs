//! Piecewise-linear test functions and finite unions of closed intervals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::rational::{max, min};
use crate::arith::{int, parse_rational, Rational, RationalInterval};
use crate::error::{Error, Result};

/// A continuous piecewise-linear function, constant outside its breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    points: Vec<(Rational, Rational)>,
}

impl PLFunction {
    /// Breakpoints must be strictly increasing in `t` and lie in `[-1, 1]`.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("a piecewise-linear function needs a breakpoint"));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::domain(format!(
                    "breakpoints not strictly increasing at {}",
                    w[1].0
                )));
            }
        }
        let one = Rational::one();
        for (t, _) in &points {
            if t.abs() > one {
                return Err(Error::domain(format!("breakpoint {t} outside [-1, 1]")));
            }
        }
        Ok(Self { points })
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            points: vec![(Rational::zero(), c)],
        }
    }

    /// `f(t) = t` on `[-1, 1]`.
    pub fn identity() -> Self {
        Self {
            points: vec![(int(-1), int(-1)), (int(1), int(1))],
        }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let first = &self.points[0];
        let last = &self.points[self.points.len() - 1];
        if t <= &first.0 {
            return first.1.clone();
        }
        if t >= &last.0 {
            return last.1.clone();
        }
        let k = self.points.partition_point(|(s, _)| s <= t);
        let (t0, v0) = &self.points[k - 1];
        let (t1, v1) = &self.points[k];
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// Exact range over `[a, b]`.
    pub fn range(&self, x: &RationalInterval) -> RationalInterval {
        let mut lo = self.eval(x.lo());
        let mut hi = lo.clone();
        let mut visit = |v: Rational| {
            if v < lo {
                lo = v;
            } else if v > hi {
                hi = v;
            }
        };
        visit(self.eval(x.hi()));
        for (t, v) in &self.points {
            if x.lo() < t && t < x.hi() {
                visit(v.clone());
            }
        }
        RationalInterval::new(lo, hi).expect("lo <= hi by construction")
    }

    /// Largest absolute slope.
    pub fn lipschitz(&self) -> Rational {
        self.points
            .windows(2)
            .map(|w| ((&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn min_value(&self) -> Rational {
        self.points.iter().map(|(_, v)| v.clone()).min().expect("non-empty")
    }

    pub fn max_value(&self) -> Rational {
        self.points.iter().map(|(_, v)| v.clone()).max().expect("non-empty")
    }

    /// `a f + b g`, on the union of both breakpoint sets.
    pub fn combine(a: &Rational, f: &PLFunction, b: &Rational, g: &PLFunction) -> PLFunction {
        let mut ts: Vec<Rational> = f
            .points
            .iter()
            .chain(&g.points)
            .map(|(t, _)| t.clone())
            .collect();
        ts.sort();
        ts.dedup();
        PLFunction {
            points: ts
                .into_iter()
                .map(|t| {
                    let v = a * f.eval(&t) + b * g.eval(&t);
                    (t, v)
                })
                .collect(),
        }
    }

    /// Whether `f > 1` at every point of `c`.
    ///
    /// On each component the minimum of `f` is attained at an endpoint or a
    /// breakpoint, so finitely many exact evaluations decide this.
    pub fn exceeds_one_on(&self, c: &ClosedRationalSet) -> bool {
        let one = Rational::one();
        c.intervals()
            .iter()
            .all(|iv| self.range(iv).lo() > &one)
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(t, v)| format!("({t}, {v})"))
            .collect();
        write!(f, "PL[{}]", parts.join(", "))
    }
}

/// A finite union of closed rational intervals inside `[-1, 1]`.
///
/// Components are kept sorted and pairwise disjoint; touching components
/// are merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedRationalSet {
    intervals: Vec<RationalInterval>,
}

impl ClosedRationalSet {
    pub fn empty() -> Self {
        Self {
            intervals: Vec::new(),
        }
    }

    pub fn full() -> Self {
        Self::from_intervals(vec![RationalInterval::new(int(-1), int(1)).expect("ordered")])
    }

    pub fn point(t: Rational) -> Self {
        Self::from_intervals(vec![RationalInterval::point(t)])
    }

    pub fn interval(a: Rational, b: Rational) -> Result<Self> {
        Ok(Self::from_intervals(vec![RationalInterval::new(a, b)?]))
    }

    /// Clips to `[-1, 1]`, sorts and merges.
    pub fn from_intervals(mut items: Vec<RationalInterval>) -> Self {
        let (lo, hi) = (int(-1), int(1));
        items.retain(|iv| iv.hi() >= &lo && iv.lo() <= &hi);
        let mut items: Vec<RationalInterval> = items
            .into_iter()
            .map(|iv| {
                RationalInterval::new(max(iv.lo(), &lo), min(iv.hi(), &hi)).expect("non-empty clip")
            })
            .collect();
        items.sort_by(|a, b| a.lo().cmp(b.lo()));
        let mut out: Vec<RationalInterval> = Vec::new();
        for iv in items {
            match out.last_mut() {
                Some(last) if iv.lo() <= last.hi() => *last = last.hull(&iv),
                _ => out.push(iv),
            }
        }
        Self { intervals: out }
    }

    pub fn intervals(&self) -> &[RationalInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(t))
    }

    pub fn min(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| iv.lo())
    }

    pub fn max(&self) -> Option<&Rational> {
        self.intervals.last().map(|iv| iv.hi())
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(
            self.intervals
                .iter()
                .chain(&other.intervals)
                .cloned()
                .collect(),
        )
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                let lo = max(a.lo(), b.lo());
                let hi = min(a.hi(), b.hi());
                if lo <= hi {
                    out.push(RationalInterval::new(lo, hi).expect("ordered"));
                }
            }
        }
        Self::from_intervals(out)
    }

    /// `{ k t : t in self }` for `0 < k`, clipped to `[-1, 1]`.
    ///
    /// With `B = c A` this gives `nu_B(C) = nu_A(C / c)`.
    pub fn scaled(&self, k: &Rational) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::domain(format!("scale factor {k} must be positive")));
        }
        Ok(Self::from_intervals(
            self.intervals.iter().map(|iv| iv.scale(k)).collect(),
        ))
    }

    /// Whether `c ⊆ self`.
    pub fn includes(&self, other: &Self) -> bool {
        other
            .intervals
            .iter()
            .all(|b| self.intervals.iter().any(|a| a.contains_interval(b)))
    }

    /// Endpoints of components, relative to `[-1, 1]`: the ends `±1` are
    /// interior points of the ambient interval only when not at the edge.
    pub fn boundary(&self) -> Vec<Rational> {
        let (lo, hi) = (int(-1), int(1));
        let mut out = Vec::new();
        for iv in &self.intervals {
            if iv.lo() != &lo {
                out.push(iv.lo().clone());
            }
            if iv.hi() != &hi && iv.hi() != iv.lo() {
                out.push(iv.hi().clone());
            } else if iv.hi() == iv.lo() && iv.lo() == &lo {
                out.push(lo.clone());
            }
        }
        out
    }

    /// Parses `∅`, `{a}`, `[a,b]` and unions joined by `∪` or `U`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∅" || s == "{}" || s.eq_ignore_ascii_case("empty") {
            return Ok(Self::empty());
        }
        let mut items = Vec::new();
        for part in s.split(['∪', 'U', 'u']) {
            let part = part.trim();
            if part == "∅" {
                continue;
            }
            if let Some(inner) = part.strip_prefix('{').and_then(|p| p.strip_suffix('}')) {
                let t = parse_rational(inner.trim())?;
                items.push(RationalInterval::point(t));
            } else if let Some(inner) = part.strip_prefix('[').and_then(|p| p.strip_suffix(']')) {
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::parse(format!("expected [a,b], got {part}")))?;
                let a = parse_rational(a.trim())?;
                let b = parse_rational(b.trim())?;
                items.push(
                    RationalInterval::new(a, b)
                        .map_err(|_| Error::parse(format!("empty interval {part}")))?,
                );
            } else {
                return Err(Error::parse(format!("cannot read set component {part:?}")));
            }
        }
        Ok(Self::from_intervals(items))
    }
}

impl fmt::Display for ClosedRationalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|iv| {
                if iv.is_point() {
                    format!("{{{}}}", iv.lo())
                } else {
                    format!("[{},{}]", iv.lo(), iv.hi())
                }
            })
            .collect();
        f.write_str(&parts.join("∪"))
    }
}
