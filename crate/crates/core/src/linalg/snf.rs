//! Smith normal form over Euclidean rings (Z, F_p[u], and F_p as a
//! degenerate case).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Ring, Scalar};

/// Smith normal form `P * M * Q = D` with the inverses of both transforms.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub ring: Ring,
    /// Nonzero diagonal entries, normalized, each dividing the next.
    pub invariant_factors: Vec<Scalar>,
    pub rank: usize,
    pub row_transform: ExactMatrix,
    pub row_transform_inv: ExactMatrix,
    pub col_transform: ExactMatrix,
    pub col_transform_inv: ExactMatrix,
}

impl SnfResult {
    /// The diagonal matrix `D`, of the same shape as the input.
    pub fn diagonal(&self) -> ExactMatrix {
        let mut d = ExactMatrix::zeros(self.ring, self.row_transform.rows(), self.col_transform.rows());
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }

    /// `P^{-1} D Q^{-1}`, which must equal the input matrix.
    pub fn reassemble(&self) -> ExactMatrix {
        self.row_transform_inv
            .mul(&self.diagonal())
            .and_then(|m| m.mul(&self.col_transform_inv))
            .expect("shapes are consistent by construction")
    }
}

struct Work {
    ring: Ring,
    a: Vec<Vec<Scalar>>,
    p: Vec<Vec<Scalar>>,
    p_inv: Vec<Vec<Scalar>>,
    q: Vec<Vec<Scalar>>,
    q_inv: Vec<Vec<Scalar>>,
}

fn identity(ring: Ring, n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect()
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.p.swap(i, j);
        for row in self.p_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.q.iter_mut() {
            row.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &Scalar) {
        let r = self.ring;
        for k in 0..self.a[0].len() {
            let v = r.mul(c, &self.a[j][k]);
            self.a[i][k] = r.add(&self.a[i][k], &v);
        }
        for k in 0..self.p.len() {
            let v = r.mul(c, &self.p[j][k]);
            self.p[i][k] = r.add(&self.p[i][k], &v);
        }
        for row in self.p_inv.iter_mut() {
            let v = r.mul(c, &row[i]);
            row[j] = r.sub(&row[j], &v);
        }
    }

    /// col_j += c * col_k
    fn add_col(&mut self, j: usize, k: usize, c: &Scalar) {
        let r = self.ring;
        for row in self.a.iter_mut() {
            let v = r.mul(c, &row[k]);
            row[j] = r.add(&row[j], &v);
        }
        for row in self.q.iter_mut() {
            let v = r.mul(c, &row[k]);
            row[j] = r.add(&row[j], &v);
        }
        for l in 0..self.q_inv.len() {
            let v = r.mul(c, &self.q_inv[j][l]);
            self.q_inv[k][l] = r.sub(&self.q_inv[k][l], &v);
        }
    }

    fn scale_row(&mut self, i: usize, unit: &Scalar) {
        let r = self.ring;
        let inv = r.unit_inverse(unit);
        for v in self.a[i].iter_mut() {
            *v = r.mul(unit, v);
        }
        for v in self.p[i].iter_mut() {
            *v = r.mul(unit, v);
        }
        for row in self.p_inv.iter_mut() {
            row[i] = r.mul(&row[i], &inv);
        }
    }

    /// Position of a nonzero entry of minimal norm in the trailing block.
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let r = self.ring;
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.len() {
            for j in k..self.a[i].len() {
                if r.is_zero(&self.a[i][j]) {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => r.cmp_norm(&self.a[i][j], &self.a[bi][bj]) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

fn to_dense(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    m.to_dense()
}

fn from_dense(ring: Ring, d: Vec<Vec<Scalar>>, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::from_dense(ring, rows, cols, d).expect("well-formed dense data")
}

/// Smith normal form with minimal-norm pivoting.
///
/// Works over Z and F_p[u]; over F_p it degenerates to rank-revealing
/// elimination with all invariant factors equal to 1.
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SnfResult> {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        ring,
        a: if cols == 0 { vec![Vec::new(); rows] } else { to_dense(m) },
        p: identity(ring, rows),
        p_inv: identity(ring, rows),
        q: identity(ring, cols),
        q_inv: identity(ring, cols),
    };
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = w.min_pivot(k) else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if ring.is_zero(&w.a[i][k]) {
                    continue;
                }
                let (q, rem) = ring.div_rem(&w.a[i][k], &w.a[k][k]);
                w.add_row(i, k, &ring.neg(&q));
                if !ring.is_zero(&rem) {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if ring.is_zero(&w.a[k][j]) {
                    continue;
                }
                let (q, rem) = ring.div_rem(&w.a[k][j], &w.a[k][k]);
                w.add_col(j, k, &ring.neg(&q));
                if !ring.is_zero(&rem) {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce the divisibility chain
                let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !ring.divides(&w.a[k][k], &w.a[i][j])));
                match offender {
                    None => break,
                    Some(i) => {
                        w.add_row(k, i, &ring.one());
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest entry of row k / column k into the pivot
                let mut best = (k, k);
                for i in k..rows {
                    if !ring.is_zero(&w.a[i][k]) && ring.cmp_norm(&w.a[i][k], &w.a[best.0][best.1]) == Ordering::Less {
                        best = (i, k);
                    }
                }
                for j in k..cols {
                    if !ring.is_zero(&w.a[k][j]) && ring.cmp_norm(&w.a[k][j], &w.a[best.0][best.1]) == Ordering::Less {
                        best = (k, j);
                    }
                }
                w.swap_rows(k, best.0);
                w.swap_cols(k, best.1);
            }
        }
        let unit = ring.normalizing_unit(&w.a[k][k]);
        w.scale_row(k, &unit);
        k += 1;
    }
    let invariant_factors: Vec<Scalar> =
        (0..rows.min(cols)).map(|i| w.a[i][i].clone()).take_while(|a| !ring.is_zero(a)).collect();
    Ok(SnfResult {
        ring,
        rank: invariant_factors.len(),
        invariant_factors,
        row_transform: from_dense(ring, w.p, rows, rows),
        row_transform_inv: from_dense(ring, w.p_inv, rows, rows),
        col_transform: from_dense(ring, w.q, cols, cols),
        col_transform_inv: from_dense(ring, w.q_inv, cols, cols),
    })
}

/// Smith normal form restricted to the Euclidean rings Z and F_p[u].
pub fn smith_normal_form_euclidean(m: &ExactMatrix) -> Result<SnfResult> {
    if m.ring().is_field() {
        return Err(Error::UnsupportedRing { ring: m.ring(), op: "smith_normal_form" });
    }
    smith_normal_form(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{FpPoly, Prime};

    fn check(m: &ExactMatrix) -> SnfResult {
        let s = smith_normal_form(m).unwrap();
        let r = m.ring();
        let pmq = s.row_transform.mul(m).unwrap().mul(&s.col_transform).unwrap();
        assert_eq!(pmq, s.diagonal());
        assert_eq!(&s.reassemble(), m);
        for w in s.invariant_factors.windows(2) {
            assert!(r.divides(&w[0], &w[1]));
        }
        s
    }

    #[test]
    fn diag_two() {
        let m = ExactMatrix::from_i64(Ring::Integers, &[&[2]]);
        assert_eq!(check(&m).invariant_factors, vec![Ring::Integers.from_i64(2)]);
    }

    #[test]
    fn diag_two_four() {
        let m = ExactMatrix::from_i64(Ring::Integers, &[&[2, 0], &[0, 4]]);
        let z = Ring::Integers;
        assert_eq!(check(&m).invariant_factors, vec![z.from_i64(2), z.from_i64(4)]);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2,3) ~ diag(1,6)
        let m = ExactMatrix::from_i64(Ring::Integers, &[&[2, 0], &[0, 3]]);
        let z = Ring::Integers;
        assert_eq!(check(&m).invariant_factors, vec![z.from_i64(1), z.from_i64(6)]);
    }

    #[test]
    fn rectangular_and_empty() {
        let m = ExactMatrix::from_i64(Ring::Integers, &[&[4, 6, 8], &[6, 9, 12]]);
        let s = check(&m);
        assert_eq!(s.rank, 1);
        // gcd of all entries
        assert_eq!(s.invariant_factors, vec![Ring::Integers.from_i64(1)]);
        let e = ExactMatrix::zeros(Ring::Integers, 0, 3);
        assert_eq!(check(&e).rank, 0);
        let e = ExactMatrix::zeros(Ring::Integers, 2, 0);
        assert_eq!(check(&e).rank, 0);
    }

    #[test]
    fn polynomial_ring() {
        let p = Prime::new(3).unwrap();
        let r = Ring::fp_poly(p);
        let u = r.u().unwrap();
        let u2 = Scalar::Poly(FpPoly::monomial(1, 2, 3));
        let m = ExactMatrix::from_dense(r, 2, 2, vec![vec![u2.clone(), u.clone()], vec![u.clone(), r.zero()]]).unwrap();
        let s = check(&m);
        // gcd of entries is u and the determinant is -u^2
        assert_eq!(s.invariant_factors, vec![u.clone(), u]);
    }

    #[test]
    fn field_rejected_by_euclidean_entry_point() {
        let m = ExactMatrix::identity(Ring::fp(Prime::new(2).unwrap()), 1);
        assert!(smith_normal_form_euclidean(&m).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..5, 1usize..5)
                .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r))
        }

        fn build(rows: &[Vec<i64>]) -> ExactMatrix {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            ExactMatrix::from_i64(Ring::Integers, &refs)
        }

        proptest! {
            #[test]
            fn transforms_reassemble(rows in int_matrix()) {
                check(&build(&rows));
            }

            #[test]
            fn mod_p_rank_counts_units(rows in int_matrix(), pi in 0usize..3) {
                let p = Prime::new([2, 3, 5][pi]).unwrap();
                let m = build(&rows);
                let s = smith_normal_form(&m).unwrap();
                let expected = s
                    .invariant_factors
                    .iter()
                    .filter(|f| Ring::Integers.reduce_mod_p(f, p) != 0)
                    .count();
                prop_assert_eq!(crate::linalg::rank(&m.reduce_mod_p(p)).unwrap(), expected);
            }
        }
    }
}
