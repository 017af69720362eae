//! The spectral measure of `x` for an operator with a finite block.
//!
//! For `A = M ⊕ rest I` and `x = u + v` with `u` inside the block, the
//! measure is the atom `|v|^2` at `rest` plus the spectral measure of `u`
//! under `M`. The latter is computed exactly by the Lanczos recurrence: the
//! monic polynomials `p_{k+1} = (t - a_k) p_k - b_k p_{k-1}` are orthogonal
//! for it, the measure is carried by the roots of the last one, and the
//! weight at a root `l` is `|q_{m-1}|^2 / (p_{m-1}(l) p_m'(l))`.

use num_traits::{One, Zero};

use super::operator::BoundedOperator;
use super::poly::Polynomial;
use super::sets::PLFunction;
use crate::arith::rational::pow2_neg;
use crate::arith::{int, real, GaussianRational, Rational, RationalInterval, Scalar};
use crate::error::{Error, Result};
use crate::hilbert::SparseVector;

type Vector = SparseVector<GaussianRational>;

fn dense_inner(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    a.iter()
        .zip(b)
        .fold(GaussianRational::zero(), |acc, (x, y)| acc + x.conj() * y)
}

fn dense_norm_sq(a: &[GaussianRational]) -> Rational {
    a.iter().map(|z| z.abs_sq()).sum()
}

#[derive(Clone, Debug)]
pub struct SpectralMeasure {
    /// `p_0, ..., p_m`.
    polys: Vec<Polynomial>,
    /// `|q_{m-1}|^2`.
    last_norm_sq: Rational,
    /// Isolating intervals for the roots of `p_m`, in increasing order.
    roots: Vec<RationalInterval>,
    derivative: Polynomial,
    rest: Rational,
    rest_mass: Rational,
}

/// One atom: where it is and how heavy it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub location: RationalInterval,
    pub weight: RationalInterval,
}

impl SpectralMeasure {
    pub fn new(a: &BoundedOperator, x: &Vector) -> Result<Self> {
        let (m, rest) = a
            .block()
            .ok_or_else(|| Error::domain("spectral measure needs a finite block"))?;
        let n = m.len();
        let rest_mass = x.tail(n).norm_sq();
        let q0: Vec<GaussianRational> = (0..n).map(|i| x.get(i)).collect();

        let mut polys = vec![Polynomial::constant(Rational::one())];
        let mut last_norm_sq = Rational::zero();
        if !dense_norm_sq(&q0).is_zero() {
            let apply = |q: &[GaussianRational]| -> Vec<GaussianRational> {
                (0..n)
                    .map(|i| (0..n).fold(GaussianRational::zero(), |acc, j| acc + &m[i][j] * &q[j]))
                    .collect()
            };
            let mut prev: Vec<GaussianRational> = vec![GaussianRational::zero(); n];
            let mut prev_norm = Rational::zero();
            let mut cur = q0;
            loop {
                let norm = dense_norm_sq(&cur);
                let mq = apply(&cur);
                let alpha = dense_inner(&cur, &mq).re / &norm;
                let beta = if prev_norm.is_zero() {
                    Rational::zero()
                } else {
                    &norm / &prev_norm
                };
                let next: Vec<GaussianRational> = (0..n)
                    .map(|i| &mq[i] - &cur[i] * real(alpha.clone()) - &prev[i] * real(beta.clone()))
                    .collect();
                let k = polys.len() - 1;
                let mut p = polys[k].mul(&Polynomial::linear_root(&alpha));
                if k > 0 {
                    p = p.add(&polys[k - 1].scale(&-beta));
                }
                polys.push(p);
                if dense_norm_sq(&next).is_zero() {
                    last_norm_sq = norm;
                    break;
                }
                prev = cur;
                prev_norm = norm;
                cur = next;
            }
        }
        let derivative = polys.last().expect("p_0 exists").derivative();
        let mut measure = Self {
            polys,
            last_norm_sq,
            roots: Vec::new(),
            derivative,
            rest,
            rest_mass,
        };
        measure.isolate();
        Ok(measure)
    }

    /// Number of Lanczos steps, i.e. the number of atoms inside the block.
    pub fn block_atoms(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn rest(&self) -> (&Rational, &Rational) {
        (&self.rest, &self.rest_mass)
    }

    /// Sign changes of `p_0(t), ..., p_m(t)`, zeros skipped: the number of
    /// roots of `p_m` above `t`.
    fn variations(&self, t: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.polys {
            let v = p.eval(t);
            if v.is_zero() {
                continue;
            }
            let pos = v > Rational::zero();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Roots in `(lo, hi]`.
    fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo) - self.variations(hi)
    }

    fn isolate(&mut self) {
        if self.block_atoms() == 0 {
            return;
        }
        let mut out = Vec::new();
        let mut stack = vec![(int(-2), int(2))];
        while let Some((lo, hi)) = stack.pop() {
            match self.count(&lo, &hi) {
                0 => {}
                1 => out.push(RationalInterval::new(lo, hi).expect("ordered")),
                _ => {
                    let mid = (&lo + &hi) / int(2);
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort_by(|a, b| a.lo().cmp(b.lo()));
        self.roots = out;
    }

    /// Shrinks every root interval below `2^-bits`.
    pub fn refine(&mut self, bits: u32) {
        let target = pow2_neg(bits);
        let top = self.polys.last().expect("p_0 exists").clone();
        let roots = std::mem::take(&mut self.roots);
        self.roots = roots
            .into_iter()
            .map(|iv| {
                let (mut lo, mut hi) = (iv.lo().clone(), iv.hi().clone());
                while &hi - &lo > target {
                    if top.eval(&hi).is_zero() {
                        lo = hi.clone();
                        break;
                    }
                    let mid = (&lo + &hi) / int(2);
                    if self.count(&lo, &mid) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                if lo != hi && top.eval(&hi).is_zero() {
                    lo = hi.clone();
                }
                RationalInterval::new(lo, hi).expect("ordered")
            })
            .collect();
    }

    /// Current atom enclosures; `None` when a weight denominator still
    /// straddles zero at this resolution.
    pub fn atoms(&self) -> Option<Vec<Atom>> {
        let m = self.block_atoms();
        let mut out = Vec::with_capacity(m + 1);
        for loc in &self.roots {
            let den = &self.polys[m - 1].eval_interval(loc) * &self.derivative.eval_interval(loc);
            let inv = den.recip().ok()?;
            let weight = inv.scale(&self.last_norm_sq);
            // weights are non-negative
            let weight = RationalInterval::new(
                weight.lo().clone().max(Rational::zero()),
                weight.hi().clone().max(Rational::zero()),
            )
            .expect("ordered");
            out.push(Atom {
                location: loc.clone(),
                weight,
            });
        }
        if !self.rest_mass.is_zero() {
            out.push(Atom {
                location: RationalInterval::point(self.rest.clone()),
                weight: RationalInterval::point(self.rest_mass.clone()),
            });
        }
        Some(out)
    }

    /// Enclosure of `sum_j w_j f(l_j)` at the current resolution.
    pub fn integral_at_resolution(&self, f: &PLFunction) -> Option<RationalInterval> {
        let atoms = self.atoms()?;
        Some(atoms.iter().fold(RationalInterval::zero(), |acc, atom| {
            &acc + &(&atom.weight * &f.range(&atom.location))
        }))
    }

    /// Enclosure of `<x|f(A) x>` no wider than `precision`.
    pub fn integral(&mut self, f: &PLFunction, precision: &Rational) -> RationalInterval {
        let mut bits = 16;
        loop {
            self.refine(bits);
            if let Some(i) = self.integral_at_resolution(f) {
                if &i.width() <= precision {
                    return i;
                }
            }
            bits += 8;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gauss, rat};

    fn v(xs: &[(i64, i64)]) -> Vector {
        Vector::from_dense(xs.iter().map(|&(p, q)| real(rat(p, q))))
    }

    #[test]
    fn diagonal_atoms_are_exact_eigenvalues() {
        let a = BoundedOperator::diagonal(vec![rat(1, 2), rat(-1, 2)]).unwrap();
        let mut mu = SpectralMeasure::new(&a, &v(&[(3, 5), (4, 5)])).unwrap();
        mu.refine(30);
        let atoms = mu.atoms().unwrap();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[0].location, RationalInterval::point(rat(-1, 2)));
        assert_eq!(atoms[0].weight, RationalInterval::point(rat(16, 25)));
        assert_eq!(atoms[1].weight, RationalInterval::point(rat(9, 25)));
    }

    #[test]
    fn repeated_eigenvalues_merge() {
        let a = BoundedOperator::diagonal(vec![rat(1, 3), rat(1, 3), rat(-2, 3)]).unwrap();
        let x = v(&[(1, 3), (2, 3), (2, 3)]);
        let mut mu = SpectralMeasure::new(&a, &x).unwrap();
        assert_eq!(mu.block_atoms(), 2);
        let id = mu.integral(&PLFunction::identity(), &pow2_neg(20));
        let exact = rat(5, 9) * rat(1, 3) + rat(4, 9) * rat(-2, 3);
        assert!(id.contains(&exact));
    }

    #[test]
    fn hermitian_block_with_irrational_spectrum() {
        // eigenvalues (1 ± sqrt 2) / 4 and weights summing to 1
        let m = vec![
            vec![real(rat(1, 2)), gauss(rat(1, 4), rat(1, 4))],
            vec![gauss(rat(1, 4), rat(-1, 4)), real(int(0))],
        ];
        let a = BoundedOperator::finite(m, int(0)).unwrap();
        let x = Vector::basis(0);
        let mut mu = SpectralMeasure::new(&a, &x).unwrap();
        let eps = pow2_neg(30);
        let one = mu.integral(&PLFunction::constant(int(1)), &eps);
        assert!(one.contains(&int(1)));
        let t = mu.integral(&PLFunction::identity(), &eps);
        assert!(t.contains(&rat(1, 2)), "{t}");
        assert!(t.width() <= eps);
    }

    #[test]
    fn rest_atom() {
        let a = BoundedOperator::diagonal_with_rest(vec![rat(1, 2)], rat(-1, 4)).unwrap();
        let x = v(&[(3, 5), (0, 1), (4, 5)]);
        let mut mu = SpectralMeasure::new(&a, &x).unwrap();
        let i = mu.integral(&PLFunction::identity(), &pow2_neg(10));
        assert_eq!(i, RationalInterval::point(rat(9, 50) - rat(16, 100)));
    }
}
