//! Dense square matrices.
//!
//! [`SymMatrix`] keeps full row-major storage but every write is mirrored,
//! so symmetry holds exactly by construction. [`SquareMatrix`] is the
//! general (non-symmetric) counterpart, used for products of mixing
//! matrices.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from the upper triangle of `f` (`f(i, j)` for `i <= j`).
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from explicit rows, rejecting asymmetric input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        let scale = rows
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
            .max(1.0);
        for i in 0..n {
            for j in (i + 1)..n {
                if (rows[i][j] - rows[j][i]).abs() > 1e-12 * scale {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    /// Adds `v` to entry `(i, j)` and its mirror (once on the diagonal).
    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
        if i != j {
            self.data[j * self.n + i] += v;
        }
    }

    /// Adds `w * a a^T` where `a` has `+1` at `i` and `-1` at `j`.
    pub fn add_edge_outer(&mut self, i: usize, j: usize, w: f64) {
        self.add_to(i, i, w);
        self.add_to(j, j, w);
        self.add_to(i, j, -w);
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.matvec_into(x, &mut out);
        out
    }

    pub fn matvec_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        for (i, o) in out.iter_mut().enumerate() {
            *o = dot(self.row(i), x);
        }
    }

    pub fn quad_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.matvec(x))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &SymMatrix, s: f64) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + s * b).collect(),
        }
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn to_square(&self) -> SquareMatrix {
        SquareMatrix { n: self.n, data: self.data.clone() }
    }
}

/// General dense square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn identity(n: usize) -> Self {
        SymMatrix::identity(n).to_square()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, r) in orow.iter_mut().zip(rrow) {
                    *o += a * r;
                }
            }
        }
        SquareMatrix { n, data: out }
    }

    /// Subtracts `c` from every entry.
    pub fn shifted(&self, c: f64) -> SquareMatrix {
        SquareMatrix { n: self.n, data: self.data.iter().map(|x| x - c).collect() }
    }

    /// The Gram matrix `A^T A`.
    pub fn gram(&self) -> SymMatrix {
        let n = self.n;
        SymMatrix::from_fn(n, |i, j| (0..n).map(|k| self.get(k, i) * self.get(k, j)).sum())
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_are_mirrored() {
        let mut m = SymMatrix::zeros(3);
        m.set(0, 2, 4.0);
        m.add_to(2, 0, 1.0);
        assert_eq!(m.get(2, 0), 5.0);
        assert_eq!(m.get(0, 2), 5.0);
        m.add_to(1, 1, 2.0);
        assert_eq!(m.get(1, 1), 2.0);
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        let rows = vec![vec![1.0, 2.0], vec![2.5, 1.0]];
        assert!(SymMatrix::from_rows(&rows).is_err());
        let rows = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        assert_eq!(SymMatrix::from_rows(&rows).unwrap().get(1, 0), 2.0);
    }

    #[test]
    fn product_and_gram() {
        let a = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 0.0]]).unwrap().to_square();
        let p = a.mul(&a);
        assert_eq!(p.get(0, 0), 5.0);
        assert_eq!(p.get(0, 1), 2.0);
        assert_eq!(p.get(1, 1), 4.0);
        let g = a.gram();
        assert_eq!(g.get(0, 1), 2.0);
    }
}
