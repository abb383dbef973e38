//! Dense square matrices over an exact scalar type.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<C> {
    dim: usize,
    rows: Vec<Vec<C>>,
}

impl<C: Scalar> Mat<C> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![vec![C::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.rows[i][i] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: C) {
        self.rows[r][c] = value;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (c, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[r][c] = out.rows[r][c].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect())
            .collect();
        Ok(Self { dim: self.dim, rows })
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[C]) -> Result<Vec<C>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut out = vec![C::zero(); self.dim];
        for (x, row) in v.iter().zip(&self.rows) {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o = o.clone() + x.clone() * a.clone();
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x = x.clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let (ac, ic) = (a[col][c].clone(), inv[col][c].clone());
                    a[r][c] = a[r][c].clone() - f.clone() * ac;
                    inv[r][c] = inv[r][c].clone() - f.clone() * ic;
                }
            }
        }
        Ok(Self { dim: n, rows: inv })
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("square");
            }
        }
        acc
    }

    /// Integer power; negative exponents need `inverse`, passed in to
    /// avoid recomputing it.
    pub fn pow_signed(&self, inverse: &Self, k: i64) -> Self {
        if k < 0 {
            inverse.pow(k.unsigned_abs())
        } else {
            self.pow(k as u64)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, x)| if r == c { x.is_one() } else { x.is_zero() })
        })
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().flatten().all(Scalar::is_integral)
    }

    /// Ones on the diagonal and zeros above it.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            row[r].is_one() && row[r + 1..].iter().all(|x| x.is_zero())
        })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.transpose().is_lower_unitriangular()
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.dim)
            .map(|c| self.rows.iter().map(|row| row[c].clone()).collect())
            .collect();
        Self { dim: self.dim, rows }
    }

    /// Conjugate by the order-reversing permutation.
    pub fn reversed(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .rev()
            .map(|row| row.iter().rev().cloned().collect())
            .collect();
        Self { dim: self.dim, rows }
    }
}

impl<C: Scalar> fmt::Display for Mat<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
