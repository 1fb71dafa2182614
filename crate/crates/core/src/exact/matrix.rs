use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, int, Rational};
use super::vector::RationalVector;
use crate::error::{Error, Result};

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Rows must share a length; an empty list gives a 0 × `cols` matrix.
    pub fn from_rows(rows: &[RationalVector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols, "row length mismatch");
            data.extend(r.0.iter().cloned());
        }
        RationalMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_cols(cols: &[RationalVector], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vs: Vec<RationalVector> = rows.iter().map(|r| RationalVector::from_i64(r)).collect();
        Self::from_rows(&vs, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> RationalVector {
        RationalVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<RationalVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + a * b;
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim(), "shape mismatch");
        RationalVector((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduced row-echelon form and pivot columns (first nonzero entry as pivot).
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
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

    /// Determinant by fraction-free elimination over ℚ.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Basis of { x : M x = 0 }, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<RationalVector> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = RationalVector::zeros(self.cols);
                v.0[f] = Rational::one();
                for (row, &p) in piv.iter().enumerate() {
                    v.0[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of M x = b, if one exists.
    pub fn solve(&self, b: &RationalVector) -> Option<RationalVector> {
        assert_eq!(b.dim(), self.rows, "shape mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b.0[i].clone());
        }
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = RationalVector::zeros(self.cols);
        for (row, &p) in piv.iter().enumerate() {
            x.0[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Square submatrix on the chosen rows (all columns).
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let vs: Vec<RationalVector> = rows.iter().map(|&i| self.row(i)).collect();
        Self::from_rows(&vs, self.cols)
    }

    pub fn leading_principal_minors(&self) -> Vec<Rational> {
        (1..=self.rows.min(self.cols))
            .map(|n| {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, self.get(i, j).clone());
                    }
                }
                m.det()
            })
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", (0..self.cols).map(|j| fmt_rational(self.get(i, j))).join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Free-function form of [`RationalMatrix::rref`].
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    m.rref()
}

/// Σ |det| over all n-row selections of the k × n matrix `a`.
pub fn max_minor_abs_sum(a: &RationalMatrix, n: usize) -> Result<Rational> {
    if a.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.cols() });
    }
    let r = a.rank();
    if r < n {
        return Err(Error::RankDeficient { expected: n, found: r });
    }
    Ok((0..a.rows())
        .combinations(n)
        .map(|rows| a.select_rows(&rows).det().abs())
        .fold(int(0), |acc, d| acc + d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = m(&[&[1, 1], &[0, 1]]).rref();
        assert_eq!(r, RationalMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
        let (r, p) = m(&[&[1, 1], &[2, 2]]).rref();
        assert_eq!(r, m(&[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);
        let (r, p) = m(&[&[0, 0]]).rref();
        assert_eq!(r, m(&[&[0, 0]]));
        assert!(p.is_empty());
    }

    #[test]
    fn det_inverse_kernel() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), int(18));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RationalMatrix::identity(3));
        let b = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = b.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(b.mul_vec(&v).is_zero());
        }
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&RationalVector::from_i64(&[2, 0])).unwrap();
        assert_eq!(x, RationalVector::from_i64(&[1, 1]));
        let s = m(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&RationalVector::from_i64(&[1, 3])).is_none());
    }

    #[test]
    fn minor_sums() {
        let a = RationalMatrix::from_cols(&[RationalVector::from_i64(&[1, 0]), RationalVector::from_i64(&[1, 1])], 2);
        assert_eq!(max_minor_abs_sum(&a, 2).unwrap(), int(1));
        let b = m(&[&[1], &[1]]);
        assert_eq!(max_minor_abs_sum(&b, 1).unwrap(), int(2));
        assert_eq!(max_minor_abs_sum(&RationalMatrix::identity(2), 2).unwrap(), int(1));
        assert_eq!(
            max_minor_abs_sum(&m(&[&[1, 2], &[2, 4]]), 2),
            Err(Error::RankDeficient { expected: 2, found: 1 })
        );
    }
}
