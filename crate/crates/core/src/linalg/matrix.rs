use std::fmt;

use crate::error::{ModextError, Result};

use super::PrimeField;

/// Dense matrix over a prime field, entries stored row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`FqMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FqMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FqMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.q();
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod q.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(ModextError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        let data = data.into_iter().map(|v| field.reduce(v)).collect();
        Ok(FqMatrix { field, rows, cols, data })
    }

    /// Builds a matrix from residues already in `[0, q)`.
    pub fn from_residues(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(ModextError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|&&v| v >= field.q()) {
            return Err(ModextError::Input(format!("entry {bad} not in [0, {})", field.q())));
        }
        Ok(FqMatrix { field, rows, cols, data })
    }

    /// Rows given as slices of integers; all rows must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ModextError::Shape(format!("row of length {} (expected {cols})", r.len())));
            }
            data.extend(r.iter().copied());
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.q();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<Self> {
        if self.cols != other.rows || self.field != other.field {
            return Err(ModextError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let q = self.field.q() as u64;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for i in 0..self.cols {
                    acc += self.get(r, i) as u64 * other.get(i, c) as u64;
                    if acc >= 1 << 62 {
                        acc %= q;
                    }
                }
                out.data[r * other.cols + c] = (acc % q) as u32;
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.rows);
        let q = self.field.q() as u64;
        let mut out = vec![0u64; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = (*o + coef as u64 * self.get(r, c) as u64) % q;
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    pub fn add(&self, other: &FqMatrix) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(ModextError::DimensionMismatch("matrix sum".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(FqMatrix { data, ..*self })
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FqMatrix) -> Result<Self> {
        if self.cols != other.cols || self.field != other.field {
            return Err(ModextError::DimensionMismatch(format!("vstack of widths {} and {}", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &FqMatrix) -> Result<Self> {
        if self.rows != other.rows || self.field != other.field {
            return Err(ModextError::DimensionMismatch(format!("hstack of heights {} and {}", self.rows, other.rows)));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(FqMatrix { field: self.field, rows: self.rows, cols, data })
    }

    /// Append `extra` zero columns on the right.
    pub fn pad_cols(&self, extra: usize) -> Self {
        self.hstack(&Self::zeros(self.field, self.rows, extra)).expect("same height")
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FqMatrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if p != lead {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, lead * m.cols + j);
                }
            }
            let inv = f.inv(m.get(lead, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = f.mul(m.get(lead, j), inv);
                m.data[lead * m.cols + j] = v;
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.data[r * m.cols + j] = v;
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { matrix: m, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(ModextError::Shape(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.field, n))?;
        let red = aug.rref();
        if red.pivots.iter().take_while(|&&p| p < n).count() < n {
            return Err(ModextError::Singular);
        }
        let mut inv = Self::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = red.matrix.get(r, n + c);
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.field.q())?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
