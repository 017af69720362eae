#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use qlattice::arith::{gauss, int, rat, GaussianRational, Rational};
use qlattice::hilbert::{inner_product, rationalize_unit};
use qlattice::{Span, Vector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_gauss(rng: &mut ChaCha8Rng, height: i64) -> GaussianRational {
    gauss(int(rng.gen_range(-height..=height)), int(rng.gen_range(-height..=height)))
}

/// A vector with `nnz` random entries at indices below `support`.
pub fn random_vector(rng: &mut ChaCha8Rng, support: usize, nnz: usize, height: i64) -> Vector {
    let items: Vec<(usize, GaussianRational)> = (0..nnz)
        .map(|_| (rng.gen_range(0..support), small_gauss(rng, height)))
        .collect();
    Vector::from_entries(items)
}

pub fn random_nonzero(rng: &mut ChaCha8Rng, support: usize, nnz: usize, height: i64) -> Vector {
    loop {
        let v = random_vector(rng, support, nnz, height);
        if !v.is_zero() {
            return v;
        }
    }
}

/// An exactly unit vector near a random direction.
pub fn random_unit(rng: &mut ChaCha8Rng, support: usize, height: i64) -> Vector {
    let nnz = rng.gen_range(1..=support.min(4));
    let raw = random_nonzero(rng, support, nnz, height);
    let k = rng.gen_range(2..40);
    rationalize_unit(&raw, &rat(1, k)).expect("non-zero input")
}

pub fn random_radius(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..200i64);
    rat(rng.gen_range(0..q), q)
}

pub fn random_subspace(rng: &mut ChaCha8Rng, max_dim: usize, support: usize, height: i64) -> Span {
    let dim = rng.gen_range(0..=max_dim);
    let gens = (0..dim)
        .map(|_| {
            let nnz = rng.gen_range(1..=support);
            random_vector(rng, support, nnz, height)
        })
        .collect();
    Span::new(gens)
}

/// `d(c, span(gens))^2` from the normal equations `G a = b`, solved by
/// plain Gauss-Jordan elimination. Shares no code with the library's
/// orthogonalization.
pub fn oracle_distance_sq(gens: &[Vector], c: &Vector) -> Rational {
    let k = gens.len();
    let mut m: Vec<Vec<GaussianRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<GaussianRational> = (0..k).map(|j| inner_product(&gens[i], &gens[j])).collect();
            row.push(inner_product(&gens[i], c));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..k).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = GaussianRational::one() / m[r][col].clone();
        for j in 0..=k {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..k {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=k {
                    let sub = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut proj = Vector::zero();
    for (row, &col) in pivots.iter().enumerate() {
        proj = proj.axpy(&m[row][k], &gens[col]);
    }
    (c - &proj).norm_sq()
}

/// Random rational in `[-1, 1]` with denominator below `den`.
pub fn random_unit_interval(rng: &mut ChaCha8Rng, den: i64) -> Rational {
    let q = rng.gen_range(1..den);
    rat(rng.gen_range(-q..=q), q)
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub fn one() -> Rational {
    Rational::one()
}
