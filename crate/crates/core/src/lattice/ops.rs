//! Meet and finite-ambient orthocomplement.

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::hilbert::SparseVector;
use crate::linalg::Matrix;

use super::subspace::FiniteSubspace;

/// `L1 ∩ L2`.
///
/// With orthogonal bases `u_i` of `L1` and `w_j` of `L2`, the kernel of
/// `[u | -w]` parametrizes the intersection: each kernel vector `(a, b)`
/// gives the common element `sum a_i u_i`.
pub fn meet<K: Scalar>(l1: &FiniteSubspace<K>, l2: &FiniteSubspace<K>) -> FiniteSubspace<K> {
    let u = l1.basis().vectors();
    let w = l2.basis().vectors();
    if u.is_empty() || w.is_empty() {
        return FiniteSubspace::zero();
    }
    let dim = l1.max_index().max(l2.max_index()).map_or(0, |m| m + 1);
    let columns: Vec<SparseVector<K>> = u.iter().cloned().chain(w.iter().map(|x| -x)).collect();
    let kernel = Matrix::from_columns(&columns, dim).kernel();
    let generators = kernel
        .iter()
        .map(|k| {
            u.iter()
                .zip(k)
                .fold(SparseVector::zero(), |acc, (ui, a)| acc.axpy(a, ui))
                .primitive()
        })
        .collect();
    FiniteSubspace::new(generators)
}

/// `L^⊥` inside `span(e_0, ..., e_{ambient-1})`.
pub fn ortho_complement_finite<K: Scalar>(
    l: &FiniteSubspace<K>,
    ambient: usize,
) -> Result<FiniteSubspace<K>> {
    if let Some(m) = l.max_index() {
        if m >= ambient {
            return Err(Error::domain(format!(
                "generator uses index {m}, outside ambient dimension {ambient}"
            )));
        }
    }
    // <g|x> = sum conj(g_n) x_n = 0 for every basis vector g
    let rows: Vec<Vec<K>> = l
        .basis()
        .vectors()
        .iter()
        .map(|g| (0..ambient).map(|n| g.get(n).conj()).collect())
        .collect();
    let kernel = Matrix::from_rows_with_width(rows, ambient).kernel();
    Ok(FiniteSubspace::new(
        kernel
            .into_iter()
            .map(|k| SparseVector::from_dense(k).primitive())
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, real, GaussianRational};
    use crate::hilbert::inner_product;

    type V = SparseVector<GaussianRational>;

    fn v(xs: &[i64]) -> V {
        V::from_dense(xs.iter().map(|&x| real(int(x))))
    }

    fn span(gens: &[V]) -> FiniteSubspace<GaussianRational> {
        FiniteSubspace::new(gens.to_vec())
    }

    #[test]
    fn meet_examples() {
        let m = meet(&span(&[V::basis(0), V::basis(1)]), &span(&[V::basis(1), V::basis(2)]));
        assert!(m.same_span(&span(&[V::basis(1)])));
        assert!(meet(&span(&[V::basis(0)]), &span(&[V::basis(1)])).is_zero());
        let d = v(&[1, 1]);
        let m = meet(&span(&[d.clone(), V::basis(2)]), &span(&[d.clone(), V::basis(3)]));
        assert!(m.same_span(&span(&[d])));
        assert_eq!(m.dim(), 1);
    }

    #[test]
    fn complement_examples() {
        let c = ortho_complement_finite(&span(&[V::basis(0)]), 2).unwrap();
        assert!(c.same_span(&span(&[V::basis(1)])));
        let c = ortho_complement_finite(&span(&[]), 2).unwrap();
        assert!(c.same_span(&span(&[V::basis(0), V::basis(1)])));
        let c = ortho_complement_finite(&span(&[v(&[1, 1])]), 2).unwrap();
        assert!(c.same_span(&span(&[v(&[1, -1])])));
        assert!(ortho_complement_finite(&span(&[V::basis(5)]), 3).is_err());
    }

    #[test]
    fn complement_is_orthogonal_and_complementary() {
        let l = span(&[v(&[1, 2, 0, -1]), v(&[0, 1, 1, 1])]);
        let c = ortho_complement_finite(&l, 4).unwrap();
        assert_eq!(c.dim() + l.dim(), 4);
        for a in l.generators() {
            for b in c.generators() {
                assert!(num_traits::Zero::is_zero(&inner_product(a, b)));
            }
        }
    }
}
