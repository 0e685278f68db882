//! Dense matrices over an exact field: rank, reduced row echelon form, kernels.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: alloc::vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: n, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidParameter("matrix shapes do not match".into()));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : M v = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = alloc::vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(self.field.zero(), |acc, (a, b)| if a.is_zero() { acc } else { &acc + &(a * b) })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_i64(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_rows(
            &Field::Rationals,
            3,
            alloc::vec![alloc::vec![q(1), q(2), q(3)], alloc::vec![q(2), q(4), q(6)], alloc::vec![q(0), q(1), q(1)]],
        );
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn rank_over_prime_field() {
        let f2 = Field::prime(2).unwrap();
        let one = f2.one();
        let m = Matrix::from_rows(&f2, 2, alloc::vec![alloc::vec![one.clone(), one.clone()], alloc::vec![one.clone(), one]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::identity(&f2, 3).rank(), 3);
    }
}
