//! Sparse Gaussian elimination over F_p.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{inv_mod, ExactMatrix, Scalar};

/// A sparse row, sorted by column, with entries in `[1, p)`.
pub type SparseRow = Vec<(usize, u32)>;

/// `a - c*b` for sorted sparse rows.
fn axpy(a: &[(usize, u32)], c: u32, b: &[(usize, u32)], p: u32) -> SparseRow {
    let neg_c = (p - c % p) % p;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                let v = ((va as u64 + neg_c as u64 * vb as u64) % p as u64) as u32;
                if v != 0 {
                    out.push((ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                out.push((ca, va));
                i += 1;
            }
            (Some(&(ca, va)), None) => {
                out.push((ca, va));
                i += 1;
            }
            (_, Some(&(cb, vb))) => {
                let v = (neg_c as u64 * vb as u64 % p as u64) as u32;
                if v != 0 {
                    out.push((cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn scale(row: &mut SparseRow, c: u32, p: u32) {
    for e in row.iter_mut() {
        e.1 = (e.1 as u64 * c as u64 % p as u64) as u32;
    }
}

/// Row echelon form keyed by leading column; every pivot row is monic.
struct Echelon {
    p: u32,
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    fn new(p: u32) -> Self {
        Echelon { p, pivots: HashMap::new() }
    }

    /// Reduces `row` against the pivots; keeps it as a new pivot if it survives.
    fn insert(&mut self, mut row: SparseRow) -> bool {
        while let Some(&(c, v)) = row.first() {
            match self.pivots.get(&c) {
                Some(piv) => row = axpy(&row, v, piv, self.p),
                None => {
                    scale(&mut row, inv_mod(v, self.p), self.p);
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
        false
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Fully reduced echelon rows, sorted by pivot column.
    fn reduced(self) -> Vec<SparseRow> {
        let p = self.p;
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable();
        let mut pivots = self.pivots;
        // clear above each pivot, processing from the right
        for &c in cols.iter().rev() {
            let piv = pivots[&c].clone();
            for &other in cols.iter().filter(|&&o| o < c) {
                let row = &pivots[&other];
                if let Ok(k) = row.binary_search_by_key(&c, |e| e.0) {
                    let v = row[k].1;
                    let new = axpy(row, v, &piv, p);
                    pivots.insert(other, new);
                }
            }
        }
        cols.iter().map(|c| pivots.remove(c).unwrap()).collect()
    }
}

/// Sparse matrix over F_p stored as rows; the workhorse for bar complexes.
#[derive(Clone, Debug, Default)]
pub struct SparseFpMatrix {
    p: u32,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl SparseFpMatrix {
    pub fn new(p: u32, ncols: usize) -> Self {
        SparseFpMatrix { p, ncols, rows: Vec::new() }
    }

    /// Adds a row given as unsorted `(col, value)` pairs; duplicates are summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, u32)>) {
        let p = self.p;
        entries.sort_unstable_by_key(|e| e.0);
        let mut row: SparseRow = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 = (last.1 + v % p) % p,
                _ => row.push((c, v % p)),
            }
        }
        row.retain(|e| e.1 != 0);
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Splits the rows into groups that share no column (connected components
    /// of the row/column incidence graph).
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rows.len();
        let mut parent: Vec<usize> = (0..n + self.ncols).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, _) in row {
                let (a, b) = (find(&mut parent, i), find(&mut parent, n + c));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            if !self.rows[i].is_empty() {
                let r = find(&mut parent, i);
                groups.entry(r).or_default().push(i);
            }
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_unstable_by_key(|g| g[0]);
        out
    }

    /// Rank, computed block by block in parallel.
    pub fn rank(&self) -> usize {
        let p = self.p;
        self.components()
            .par_iter()
            .map(|group| {
                let mut ech = Echelon::new(p);
                for &i in group {
                    ech.insert(self.rows[i].clone());
                }
                ech.rank()
            })
            .sum()
    }

    /// Reduced row echelon form of the row space.
    pub fn rref(&self) -> Vec<SparseRow> {
        let mut ech = Echelon::new(self.p);
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech.reduced()
    }

    /// Basis of `{v : M v = 0}`, one vector per non-pivot column.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let rref = self.rref();
        let pivot_cols: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let is_pivot = {
            let mut v = vec![false; self.ncols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u32; self.ncols];
                v[f] = 1;
                for (row, &c) in rref.iter().zip(&pivot_cols) {
                    if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                        v[c] = (p - row[k].1) % p;
                    }
                }
                v
            })
            .collect()
    }
}

fn to_sparse_fp(m: &ExactMatrix) -> Result<(u32, SparseFpMatrix)> {
    let p = match m.ring() {
        crate::linalg::Ring::PrimeField { p } => p.get(),
        ring => return Err(Error::UnsupportedRing { ring, op: "rank_kernel" }),
    };
    let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); m.rows()];
    for (i, j, a) in m.iter() {
        if let Scalar::Fp(v) = a {
            rows[i].push((j, *v));
        }
    }
    let mut s = SparseFpMatrix::new(p, m.cols());
    for r in rows {
        s.push_row(r);
    }
    Ok((p, s))
}

/// Rank over a prime field.
pub fn rank(m: &ExactMatrix) -> Result<usize> {
    Ok(to_sparse_fp(m)?.1.rank())
}

/// Rank and a kernel basis over a prime field. Kernel vectors are coordinate
/// vectors of length `m.cols()`.
pub fn rank_kernel(m: &ExactMatrix) -> Result<(usize, Vec<Vec<Scalar>>)> {
    let (_, s) = to_sparse_fp(m)?;
    let kernel = s.kernel();
    let rank = m.cols() - kernel.len();
    Ok((rank, kernel.into_iter().map(|v| v.into_iter().map(Scalar::Fp).collect()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Prime, Ring};

    fn fp(p: u32) -> Ring {
        Ring::fp(Prime::new(p).unwrap())
    }

    #[test]
    fn identity_over_f2() {
        let m = ExactMatrix::identity(fp(2), 2);
        let (r, k) = rank_kernel(&m).unwrap();
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_over_f5() {
        let m = ExactMatrix::zeros(fp(5), 3, 4);
        let (r, k) = rank_kernel(&m).unwrap();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 4);
    }

    #[test]
    fn all_ones_over_f2() {
        let m = ExactMatrix::from_i64(fp(2), &[&[1, 1], &[1, 1]]);
        let (r, k) = rank_kernel(&m).unwrap();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![Scalar::Fp(1), Scalar::Fp(1)]]);
    }

    #[test]
    fn non_field_rejected() {
        let m = ExactMatrix::identity(Ring::Integers, 2);
        assert!(matches!(rank_kernel(&m), Err(Error::UnsupportedRing { .. })));
    }

    #[test]
    fn block_rank_matches_single_block() {
        let mut s = SparseFpMatrix::new(3, 6);
        s.push_row(vec![(0, 1), (1, 2)]);
        s.push_row(vec![(0, 2), (1, 1)]);
        s.push_row(vec![(3, 1), (4, 1)]);
        s.push_row(vec![(3, 2), (4, 2)]);
        s.push_row(vec![(5, 1)]);
        assert_eq!(s.components().len(), 3);
        // (1,2) and (2,1) are proportional mod 3
        assert_eq!(s.rank(), 3);
        let mut ech = Echelon::new(3);
        for r in s.rows() {
            ech.insert(r.clone());
        }
        assert_eq!(ech.rank(), 3);
    }
}
