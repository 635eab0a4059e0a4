//! Dense matrices over Q(i, sqrt(d)) and exact Gaussian elimination.
//!
//! Bases of subspaces are stored column-wise throughout the crate: a matrix
//! with `cols` columns spans a `cols`-dimensional space when its columns are
//! independent.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for j in 0..n {
            m[(j, j)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<Scalar>>) -> Self {
        let c = cols.len();
        let mut m = Matrix::zero(rows, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn from_int_rows(rows: Vec<Vec<i64>>) -> Self {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Scalar::from_int).collect())
                .collect(),
        )
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|s| s.is_integer())
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(|s| s.is_rational())
    }

    pub fn to_bigint(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_integer() {
            return Err(Error::invalid("matrix has non-integer entries"));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].as_integer().unwrap()).collect())
            .collect())
    }

    pub fn from_bigint(rows: &[Vec<BigInt>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| Scalar::from_rat(BigRational::from_integer(x.clone())))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Matrix {
        let mut m = self.clone();
        for s in m.data.iter_mut() {
            *s = s.conj();
        }
        m
    }

    pub fn neg(&self) -> Matrix {
        let mut m = self.clone();
        for s in m.data.iter_mut() {
            *s = -s.clone();
        }
        m
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        let mut m = self.clone();
        for s in m.data.iter_mut() {
            *s = s.clone() * k.clone();
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (s, o) in m.data.iter_mut().zip(other.data.iter()) {
            *s = s.clone() + o.clone();
        }
        m
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut m = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let t = self[(i, k)].clone() * other[(k, j)].clone();
                    m[(i, j)] += t;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Vertical concatenation [self; other].
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Matrix::zero(self.rows + other.rows, self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                m[(i, j)] = self[(i, j)].clone();
            }
            for i in 0..other.rows {
                m[(self.rows + i, j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_cols(self.rows, cols.iter().map(|&j| self.col(j)).collect())
    }

    /// Row-reduced echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(r, j)].clone();
                    m[(r, j)] = tmp;
                }
            }
            let inv = m[(r, c)].inv().unwrap();
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let t = m[(r, j)].clone() * f.clone();
                        m[(i, j)] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel {x : M x = 0}, columns.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut cols = Vec::new();
        for &fc in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[fc] = Scalar::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(pi, fc)].clone();
            }
            cols.push(v);
        }
        Matrix::from_cols(self.cols, cols)
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn image(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.submatrix_cols(&pivots)
    }

    /// Solve M x = b over the field; None when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let rhs = Matrix::from_cols(self.rows, vec![b.to_vec()]);
        let aug = self.hcat(&rhs);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(pi, self.cols)].clone();
        }
        Some(x)
    }

    /// Solve M X = B columnwise; None when any column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        let mut cols = Vec::new();
        for j in 0..b.cols {
            cols.push(self.solve(&b.col(j))?);
        }
        Some(Matrix::from_cols(self.cols, cols))
    }

    /// Clear denominators: smallest positive integer multiple with integer
    /// entries, for rational matrices.
    pub fn clear_denominators(&self) -> Result<Matrix> {
        if !self.is_rational() {
            return Err(Error::invalid("expected a rational matrix"));
        }
        let mut lcm = BigInt::from(1);
        for s in &self.data {
            let den = s.a.denom().clone();
            lcm = num_integer::lcm(lcm, den);
        }
        Ok(self.scale(&Scalar::from_rat(Rat::from_integer(lcm))))
    }

    /// The 4x expansion of a matrix over the Q-basis {1, i, sqrt(d), i sqrt(d)}:
    /// each entry row becomes four rational rows (a, b, c, e components).
    pub fn expand_rows(&self) -> Matrix {
        let mut m = Matrix::zero(4 * self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let [a, b, c, e] = self[(i, j)].components();
                m[(4 * i, j)] = Scalar::from_rat(a);
                m[(4 * i + 1, j)] = Scalar::from_rat(b);
                m[(4 * i + 2, j)] = Scalar::from_rat(c);
                m[(4 * i + 3, j)] = Scalar::from_rat(e);
            }
        }
        m
    }
}

pub fn expand_vec(v: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(4 * v.len());
    for s in v {
        for comp in s.components() {
            out.push(Scalar::from_rat(comp));
        }
    }
    out
}

/// Multiply a field vector by each of the four Q-basis units in turn,
/// returning the expanded rational columns. The Q-span of the result is
/// the expansion of the field-span of `v`.
pub fn unit_expansions(v: &[Scalar], d: u64) -> Vec<Vec<Scalar>> {
    let units = [
        Scalar::one(),
        Scalar::i(),
        Scalar::sqrt_d(d),
        Scalar::i() * Scalar::sqrt_d(d),
    ];
    units
        .iter()
        .map(|u| {
            let col: Vec<Scalar> = v.iter().map(|s| s.clone() * u.clone()).collect();
            expand_vec(&col)
        })
        .collect()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
