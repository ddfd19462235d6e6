use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Ring, Scalar};

/// Sparse matrix over one of the supported rings.
///
/// Entries are kept in a `BTreeMap` keyed by `(row, col)`, so iteration is
/// row-major. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl ExactMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_dense(ring: Ring, rows: usize, cols: usize, data: Vec<Vec<Scalar>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("expected {rows}x{cols} dense data")));
        }
        let mut m = Self::zeros(ring, rows, cols);
        for (i, row) in data.into_iter().enumerate() {
            for (j, a) in row.into_iter().enumerate() {
                if !ring.contains(&a) {
                    return Err(Error::Shape(format!("entry ({i},{j}) is not an element of {ring}")));
                }
                m.set(i, j, a);
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, ring.from_i64(v));
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, a: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if self.ring.is_zero(&a) {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), a);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, a: &Scalar) {
        let v = self.ring.add(&self.get(i, j), a);
        self.set(i, j, v);
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), a)| (i, j, a))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.ring.zero(); self.cols]; self.rows];
        for (i, j, a) in self.iter() {
            d[i][j] = a.clone();
        }
        d
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for (i, j, a) in self.iter() {
            t.entries.insert((j, i), a.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { left: self.ring, right: other.ring });
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self.ring;
        let mut by_row: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); other.rows];
        for (k, j, b) in other.iter() {
            by_row[k].push((j, b));
        }
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for (i, k, a) in self.iter() {
            for &(j, b) in &by_row[k] {
                out.add_to(i, j, &ring.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.ring.zero(); self.rows];
        for (i, j, a) in self.iter() {
            out[i] = self.ring.add(&out[i], &self.ring.mul(a, &v[j]));
        }
        out
    }

    /// Entrywise reduction to F_p (`u = 0` for F_p[u]).
    pub fn reduce_mod_p(&self, p: crate::linalg::Prime) -> Self {
        let target = Ring::fp(p);
        let mut m = Self::zeros(target, self.rows, self.cols);
        for (i, j, a) in self.iter() {
            m.set(i, j, Scalar::Fp(self.ring.reduce_mod_p(a, p)));
        }
        m
    }
}
