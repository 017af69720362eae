//! Dense exact matrices: row reduction, rank and kernels.

use crate::arith::Scalar;
use crate::hilbert::SparseVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<K> {
    rows: Vec<Vec<K>>,
    cols: usize,
}

impl<K: Scalar> Matrix<K> {
    /// All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows, cols }
    }

    /// `rows` may be empty; `cols` fixes the width in that case.
    pub fn from_rows_with_width(rows: Vec<Vec<K>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows, cols }
    }

    /// Matrix whose columns are the given vectors restricted to `0..dim`.
    pub fn from_columns(columns: &[SparseVector<K>], dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| columns.iter().map(|c| c.get(i)).collect())
            .collect();
        Self {
            rows,
            cols: columns.len(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.rows[i][j]
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<K>, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = K::one() / m[r][c].clone();
            for x in m[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..self.cols {
                        let sub = f.clone() * m[r][j].clone();
                        m[i][j] = m[i][j].clone() - sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            Matrix {
                rows: m,
                cols: self.cols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{ v : M v = 0 }`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![K::zero(); self.cols];
                v[f] = K::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.rows[row][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}
