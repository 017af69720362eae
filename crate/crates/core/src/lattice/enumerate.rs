//! The fixed dovetail order over rational certificate candidates.
//!
//! Raw directions are nonzero Gaussian-integer vectors in primitive form
//! (the integer parts of all coordinates are coprime). A coordinate `a + bi`
//! at index `n` costs `n + |a| + |b|`, and the weight of a vector is the sum
//! over its support, so `e_0` has weight 1, `e_1` and `(1+i) e_0` weight 2.
//! Each weight class is finite and listed by first index, then coordinate
//! height, then the fixed order of Gaussian integers of that height.
//!
//! A candidate pairs a direction of weight `w` with a radius `a/b` in lowest
//! terms, `0 <= a < b`, and has total weight `w + b`. Candidates are listed by
//! total weight, then direction weight, then direction order, then numerator.
//! The unit center for a raw direction `v` of weight `w` is
//! `rationalize_unit(v, 2^-(w+4))`, exact when `|v|` is rational.

use num_bigint::BigInt;
use num_integer::Integer;

use super::certificate::Vector;
use crate::arith::rational::{gcd_all, pow2_neg};
use crate::arith::{gauss, int, rat, Rational};
use crate::hilbert::rationalize_unit;

/// Gaussian integers `a + bi` with `|a| + |b| = h`, in a fixed order.
fn ring(h: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in (-h..=h).rev() {
        let rest = h - a.abs();
        if rest == 0 {
            out.push((a, 0));
        } else {
            out.push((a, rest));
            out.push((a, -rest));
        }
    }
    out
}

/// All primitive raw directions of weight `w`.
pub fn vectors_of_weight(w: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    collect(0, w, &mut stack, &mut out);
    out
}

fn collect(start: usize, remaining: usize, stack: &mut Vec<(usize, i64, i64)>, out: &mut Vec<Vector>) {
    if remaining == 0 {
        if !stack.is_empty() && is_primitive(stack) {
            out.push(Vector::from_entries(
                stack.iter().map(|&(n, a, b)| (n, gauss(int(a), int(b)))),
            ));
        }
        return;
    }
    let mut n = start;
    while n < remaining {
        for h in 1..=(remaining - n) {
            for (a, b) in ring(h as i64) {
                stack.push((n, a, b));
                collect(n + 1, remaining - n - h, stack, out);
                stack.pop();
            }
        }
        n += 1;
    }
}

fn is_primitive(stack: &[(usize, i64, i64)]) -> bool {
    let parts: Vec<BigInt> = stack
        .iter()
        .flat_map(|&(_, a, b)| [BigInt::from(a), BigInt::from(b)])
        .collect();
    gcd_all(parts.iter()) == BigInt::from(1)
}

/// Radii with denominator exactly `b`.
fn radii(b: i64) -> Vec<Rational> {
    if b == 1 {
        return vec![int(0)];
    }
    (1..b).filter(|a| a.gcd(&b) == 1).map(|a| rat(a, b)).collect()
}

#[derive(Clone, Debug)]
pub struct Direction {
    pub raw: Vector,
    pub unit: Vector,
    pub weight: usize,
}

/// Lazily grown list of directions, grouped by weight.
#[derive(Clone, Debug, Default)]
pub struct DirectionTable {
    by_weight: Vec<Vec<Direction>>,
    offsets: Vec<usize>,
}

impl DirectionTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn ensure_weight(&mut self, w: usize) {
        while self.by_weight.len() <= w {
            let weight = self.by_weight.len();
            let offset = self.offsets.last().copied().unwrap_or(0)
                + self.by_weight.last().map_or(0, Vec::len);
            let dirs = if weight == 0 {
                Vec::new()
            } else {
                vectors_of_weight(weight)
                    .into_iter()
                    .map(|raw| {
                        let unit = rationalize_unit(&raw, &pow2_neg(weight as u32 + 4))
                            .expect("raw directions are nonzero");
                        Direction { raw, unit, weight }
                    })
                    .collect()
            };
            self.by_weight.push(dirs);
            self.offsets.push(offset);
        }
    }

    pub fn weight_class(&mut self, w: usize) -> &[Direction] {
        self.ensure_weight(w);
        &self.by_weight[w]
    }

    /// Global index of the `k`-th direction of weight `w`.
    pub fn global_index(&mut self, w: usize, k: usize) -> usize {
        self.ensure_weight(w);
        self.offsets[w] + k
    }

    /// The direction with global index `i`.
    pub fn get(&mut self, i: usize) -> &Direction {
        let mut w = 1;
        loop {
            self.ensure_weight(w);
            if i < self.offsets[w] + self.by_weight[w].len() {
                let k = i - self.offsets[w];
                return &self.by_weight[w][k];
            }
            w += 1;
        }
    }
}

/// One slot of the candidate dovetail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub slot: usize,
    pub direction: usize,
    pub c: Vector,
    pub r: Rational,
}

/// Position in the candidate order.
#[derive(Clone, Debug)]
pub(crate) struct GridCursor {
    slot: usize,
    total: usize,
    dir_weight: usize,
    dir_index: usize,
    radius_index: usize,
    radii: Vec<Rational>,
}

impl GridCursor {
    pub(crate) fn new() -> Self {
        Self {
            slot: 0,
            total: 2,
            dir_weight: 1,
            dir_index: 0,
            radius_index: 0,
            radii: radii(1),
        }
    }

    pub(crate) fn next(&mut self, table: &mut DirectionTable) -> Candidate {
        loop {
            let class_len = table.weight_class(self.dir_weight).len();
            if self.dir_index < class_len && self.radius_index < self.radii.len() {
                let d = &table.weight_class(self.dir_weight)[self.dir_index];
                let c = d.unit.clone();
                let direction = table.global_index(self.dir_weight, self.dir_index);
                let r = self.radii[self.radius_index].clone();
                let cand = Candidate {
                    slot: self.slot,
                    direction,
                    c,
                    r,
                };
                self.slot += 1;
                self.radius_index += 1;
                return cand;
            }
            // advance: next direction, next direction weight, next total weight
            if self.dir_index < class_len {
                self.dir_index += 1;
                self.radius_index = 0;
                continue;
            }
            self.dir_index = 0;
            self.radius_index = 0;
            self.dir_weight += 1;
            if self.dir_weight >= self.total {
                self.total += 1;
                self.dir_weight = 1;
            }
            self.radii = radii((self.total - self.dir_weight) as i64);
        }
    }
}

/// The candidate stream in dovetail order.
pub fn candidates() -> impl Iterator<Item = Candidate> {
    let mut table = DirectionTable::new();
    let mut cursor = GridCursor::new();
    std::iter::repeat_with(move || cursor.next(&mut table))
}

/// Unit centers in direction order.
pub fn directions() -> impl Iterator<Item = Vector> {
    let mut table = DirectionTable::new();
    (0usize..).map(move |i| table.get(i).unit.clone())
}
