//! Dense row-major matrices and LU solves with partial pivoting.
//!
//! Collocation systems here are small (N <= a few hundred), so a plain dense
//! factorization is the right tool.

use crate::error::{Error, Result};

/// Dense row-major matrix of f64.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// A * x for a length-`cols` vector.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), x))
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Solve A x = rhs by LU with partial pivoting. The pivot threshold is
/// relative to the largest entry of A; falling below it reports the matrix
/// as numerically singular.
pub fn solve_linear_system(a: &Mat, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = a.n_rows();
    assert_eq!(a.n_cols(), n, "matrix must be square");
    assert_eq!(rhs.len(), n, "rhs length mismatch");

    let mut lu = a.clone();
    let mut x = rhs.to_vec();
    let scale = lu.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = 1e-14 * scale.max(f64::MIN_POSITIVE);

    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, lu[(r, col)].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if pivot_abs < threshold {
            return Err(Error::SingularMatrix {
                pivot: pivot_abs,
                column: col,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(pivot_row, j)];
                lu[(pivot_row, j)] = tmp;
            }
            x.swap(col, pivot_row);
        }
        let pivot = lu[(col, col)];
        for r in col + 1..n {
            let factor = lu[(r, col)] / pivot;
            if factor == 0.0 {
                continue;
            }
            lu[(r, col)] = 0.0;
            for j in col + 1..n {
                lu[(r, j)] -= factor * lu[(col, j)];
            }
            x[r] -= factor * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] /= lu[(col, col)];
        for r in 0..col {
            x[r] -= lu[(r, col)] * x[col];
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let a = Mat::identity(4);
        let x = solve_linear_system(&a, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(x, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn haar_level_one_matrix_solve() {
        // H from the level-1 operational matrix; H * (1,1,1,1)^T = (4,0,0,0)^T
        let h = Mat::from_rows(vec![
            vec![1.0, 1.0, 1.0, 1.0],
            vec![1.0, 1.0, -1.0, -1.0],
            vec![1.0, -1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, -1.0],
        ]);
        let x = solve_linear_system(&h, &[4.0, 0.0, 0.0, 0.0]).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn random_system_residual_is_tiny() {
        // multiply-back oracle on a deterministic well-conditioned 8x8 system
        let n = 8;
        let mut state = 42u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = next() + if i == j { 4.0 } else { 0.0 };
            }
        }
        let rhs: Vec<f64> = (0..n).map(|_| next()).collect();
        let x = solve_linear_system(&a, &rhs).unwrap();
        let back = a.mul_vec(&x);
        let resid = back
            .iter()
            .zip(&rhs)
            .fold(0.0f64, |m, (b, r)| m.max((b - r).abs()));
        assert!(resid <= 1e-10 * (1.0 + sup_norm(&rhs)));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = Mat::from_rows(vec![
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 6.0],
            vec![0.0, 1.0, 1.0],
        ]);
        match solve_linear_system(&a, &[1.0, 2.0, 1.0]) {
            Err(Error::SingularMatrix { .. }) => {}
            other => panic!("expected singular-matrix error, got {other:?}"),
        }
    }
}
