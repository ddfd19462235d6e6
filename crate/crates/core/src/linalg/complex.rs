//! Chain complexes of finite free modules and their homology.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{field, smith_normal_form, ExactMatrix, Ring, Scalar};

/// A homologically graded complex `d_n : C_n -> C_{n-1}` of finite free
/// modules. Degrees without a recorded rank are zero.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Ring,
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, ExactMatrix>,
}

impl ChainComplex {
    pub fn new(ring: Ring) -> Self {
        ChainComplex { ring, dims: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn set_dim(&mut self, n: i64, dim: usize) {
        self.dims.insert(n, dim);
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// Records `d_n`, which must be a `dim(n-1) x dim(n)` matrix.
    pub fn set_differential(&mut self, n: i64, d: ExactMatrix) -> Result<()> {
        if d.ring() != self.ring {
            return Err(Error::RingMismatch { left: self.ring, right: d.ring() });
        }
        if d.rows() != self.dim(n - 1) || d.cols() != self.dim(n) {
            return Err(Error::Shape(format!(
                "d_{n} is {}x{}, expected {}x{}",
                d.rows(),
                d.cols(),
                self.dim(n - 1),
                self.dim(n)
            )));
        }
        self.diffs.insert(n, d);
        Ok(())
    }

    pub fn differential(&self, n: i64) -> ExactMatrix {
        self.diffs.get(&n).cloned().unwrap_or_else(|| ExactMatrix::zeros(self.ring, self.dim(n - 1), self.dim(n)))
    }

    /// Checks `d_n o d_{n+1} = 0` for every `n` in the range.
    pub fn check(&self, range: RangeInclusive<i64>) -> Result<()> {
        for n in range {
            let (Some(a), Some(b)) = (self.diffs.get(&n), self.diffs.get(&(n + 1))) else { continue };
            if !a.mul(b)?.is_zero() {
                return Err(Error::InvalidComplex { degree: n });
            }
        }
        Ok(())
    }

    /// Direct sum with another complex over the same ring.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { left: self.ring, right: other.ring });
        }
        let mut out = ChainComplex::new(self.ring);
        let degrees: std::collections::BTreeSet<i64> = self.dims.keys().chain(other.dims.keys()).copied().collect();
        for &n in &degrees {
            out.set_dim(n, self.dim(n) + other.dim(n));
        }
        let diff_degrees: std::collections::BTreeSet<i64> =
            self.diffs.keys().chain(other.diffs.keys()).copied().collect();
        for &n in &diff_degrees {
            let (a, b) = (self.differential(n), other.differential(n));
            let mut d = ExactMatrix::zeros(self.ring, out.dim(n - 1), out.dim(n));
            for (i, j, v) in a.iter() {
                d.set(i, j, v.clone());
            }
            for (i, j, v) in b.iter() {
                d.set(a.rows() + i, a.cols() + j, v.clone());
            }
            out.set_differential(n, d)?;
        }
        Ok(out)
    }
}

/// Homology in one degree: a free part and cyclic torsion summands. Over a
/// field `torsion` is always empty and `free_rank` is the dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub ring: Ring,
    pub free_rank: usize,
    pub torsion: Vec<Scalar>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Dimension over the residue field: free rank plus the number of cyclic
    /// summands.
    pub fn summands(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn torsion_strings(&self) -> Vec<String> {
        self.torsion.iter().map(|t| self.ring.display(t)).collect()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let base = match self.ring {
            Ring::Integers => "Z".to_string(),
            Ring::PrimeField { p } => format!("F_{p}"),
            Ring::FpPoly { p } => format!("F_{p}[u]"),
        };
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base.clone()),
            r => parts.push(format!("{base}^{r}")),
        }
        for t in &self.torsion {
            let t = self.ring.display(t);
            if matches!(self.ring, Ring::FpPoly { .. }) && t == "u" {
                parts.push(match self.ring.prime() {
                    Some(p) => format!("F_{p}"),
                    None => unreachable!(),
                });
            } else if self.ring == Ring::Integers {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("{base}/({t})"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct HomologyGroupJson {
    free_rank: usize,
    torsion: Vec<String>,
}

impl Serialize for HomologyGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HomologyGroupJson { free_rank: self.free_rank, torsion: self.torsion_strings() }.serialize(s)
    }
}

/// Homology of `C` in every degree of `range`.
///
/// Over a prime field only ranks are computed (sparse elimination); over Z
/// and F_p[u] the Smith normal forms of `d_n` and `d_{n+1}` give the free
/// rank and the torsion.
pub fn homology_of_complex(c: &ChainComplex, range: RangeInclusive<i64>) -> Result<BTreeMap<i64, HomologyGroup>> {
    c.check(*range.start() - 1..=*range.end())?;
    let ring = c.ring();
    let mut out = BTreeMap::new();
    for n in range {
        let dim = c.dim(n);
        let group = if ring.is_field() {
            let r_out = field::rank(&c.differential(n))?;
            let r_in = field::rank(&c.differential(n + 1))?;
            HomologyGroup { ring, free_rank: dim - r_out - r_in, torsion: Vec::new() }
        } else {
            let s_out = smith_normal_form(&c.differential(n))?;
            let s_in = smith_normal_form(&c.differential(n + 1))?;
            let torsion: Vec<Scalar> = s_in.invariant_factors.iter().filter(|f| !ring.is_unit(f)).cloned().collect();
            HomologyGroup { ring, free_rank: dim - s_out.rank - s_in.rank, torsion }
        };
        out.insert(n, group);
    }
    Ok(out)
}

/// An explicit presentation of `H_n`: representative cycles for a set of
/// cyclic generators and a map from cycles to class coordinates.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: i64,
    pub group: HomologyGroup,
    /// Representative cycles, as coordinate vectors on `C_n`.
    pub representatives: Vec<Vec<Scalar>>,
    /// Order of each generator; `None` for free generators.
    pub orders: Vec<Option<Scalar>>,
    ring: Ring,
    rank_out: usize,
    // Q^{-1} for d_n, used to express cycles in kernel coordinates
    q_inv: ExactMatrix,
    // P2 for the boundary matrix in kernel coordinates, restricted to generators
    p2: ExactMatrix,
    generator_rows: Vec<usize>,
}

impl HomologyBasis {
    /// Class coordinates of a cycle with respect to the generators; torsion
    /// coordinates are reduced modulo the generator order.
    pub fn classify(&self, z: &[Scalar]) -> Result<Vec<Scalar>> {
        let ring = self.ring;
        let full = self.q_inv.apply(z);
        if full[..self.rank_out].iter().any(|a| !ring.is_zero(a)) {
            return Err(Error::Input(format!("vector is not a cycle in degree {}", self.degree)));
        }
        let kc = &full[self.rank_out..];
        let coords = self.p2.apply(kc);
        Ok(self
            .generator_rows
            .iter()
            .zip(&self.orders)
            .map(|(&i, ord)| match ord {
                None => coords[i].clone(),
                Some(f) => canonical_rem(ring, &coords[i], f),
            })
            .collect())
    }

    pub fn is_boundary(&self, z: &[Scalar]) -> Result<bool> {
        Ok(self.classify(z)?.iter().all(|a| self.ring.is_zero(a)))
    }
}

fn canonical_rem(ring: Ring, a: &Scalar, f: &Scalar) -> Scalar {
    match (a, f) {
        (Scalar::Int(x), Scalar::Int(y)) => {
            use num_integer::Integer;
            Scalar::Int(x.mod_floor(y))
        }
        _ => ring.div_rem(a, f).1,
    }
}

/// Homology in degree `n` with explicit generators. Works over every ring;
/// intended for the small complexes underlying DGAs.
pub fn homology_basis(c: &ChainComplex, n: i64) -> Result<HomologyBasis> {
    c.check(n - 1..=n)?;
    let ring = c.ring();
    let dim = c.dim(n);
    let s1 = smith_normal_form(&c.differential(n))?;
    let r = s1.rank;
    let k = dim - r;
    let d_in = c.differential(n + 1);
    let moved = s1.col_transform_inv.mul(&d_in)?;
    let mut b = ExactMatrix::zeros(ring, k, d_in.cols());
    for (i, j, v) in moved.iter() {
        if i >= r {
            b.set(i - r, j, v.clone());
        } else {
            return Err(Error::InvalidComplex { degree: n });
        }
    }
    let s2 = smith_normal_form(&b)?;
    let p2_inv = &s2.row_transform_inv;
    let mut generator_rows = Vec::new();
    let mut orders = Vec::new();
    let mut torsion = Vec::new();
    let mut free_rank = 0;
    for i in 0..k {
        if i < s2.rank {
            let f = &s2.invariant_factors[i];
            if !ring.is_unit(f) {
                generator_rows.push(i);
                orders.push(Some(f.clone()));
                torsion.push(f.clone());
            }
        } else {
            generator_rows.push(i);
            orders.push(None);
            free_rank += 1;
        }
    }
    let representatives = generator_rows
        .iter()
        .map(|&i| {
            let kc = p2_inv.column(i);
            let mut z = vec![ring.zero(); dim];
            for (j, a) in kc.iter().enumerate() {
                if ring.is_zero(a) {
                    continue;
                }
                for (row, q) in s1.col_transform.column(r + j).iter().enumerate() {
                    z[row] = ring.add(&z[row], &ring.mul(a, q));
                }
            }
            z
        })
        .collect();
    Ok(HomologyBasis {
        degree: n,
        group: HomologyGroup { ring, free_rank, torsion },
        representatives,
        orders,
        ring,
        rank_out: r,
        q_inv: s1.col_transform_inv,
        p2: s2.row_transform,
        generator_rows,
    })
}
