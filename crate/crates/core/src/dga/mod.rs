//! Finite differential graded algebras over Z, F_p, or F_p[u].
//!
//! Degrees are homological: the differential lowers degree by one and
//! satisfies `d(ab) = d(a) b + (-1)^{|a|} a d(b)`.

mod builtins;
mod homology;
mod json;
mod monomial;
mod ops;
pub mod random;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, ExactMatrix, Ring, Scalar};

pub use builtins::{
    builtin, builtin_cone_p, builtin_endomorphism, builtin_formal_polynomial, builtin_names, builtin_y2,
    formal_polynomial_exponent, from_presentation, BUILTINS,
};
pub use homology::{homology, homology_ring, ClassIndex, HomologyRing};
pub use json::DgaJson;
pub use monomial::{MonomialDgaSpec, MonomialGen, MonomialKind};
pub use ops::{base_change_mod_p, exterior_cone, mod_p_reduction, tensor_dga, truncate, TruncationResult};
pub use validate::{validate, Violation, ViolationKind};

/// A basis element: its degree and index within that degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisId {
    pub degree: i64,
    pub index: usize,
}

impl BasisId {
    pub fn new(degree: i64, index: usize) -> Self {
        BasisId { degree, index }
    }
}

/// Sparse linear combination of basis elements of one degree.
pub type Terms = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct Dga {
    name: String,
    ring: Ring,
    lo: i64,
    hi: i64,
    basis: Vec<Vec<String>>,
    /// `diffs[n - lo]` is `d_n : X_n -> X_{n-1}`.
    diffs: Vec<ExactMatrix>,
    products: BTreeMap<(BasisId, BasisId), Terms>,
    unit: Vec<Scalar>,
    exact_below: Option<i64>,
}

impl Dga {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Degrees below which this finite model agrees with the algebra it
    /// approximates; `None` when the model is the algebra itself.
    pub fn exact_below(&self) -> Option<i64> {
        self.exact_below
    }

    pub fn in_range(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn dim(&self, n: i64) -> usize {
        if self.in_range(n) {
            self.basis[(n - self.lo) as usize].len()
        } else {
            0
        }
    }

    pub fn labels(&self, n: i64) -> &[String] {
        if self.in_range(n) {
            &self.basis[(n - self.lo) as usize]
        } else {
            &[]
        }
    }

    pub fn label(&self, b: BasisId) -> &str {
        &self.labels(b.degree)[b.index]
    }

    pub fn basis_ids(&self) -> impl Iterator<Item = BasisId> + '_ {
        (self.lo..=self.hi).flat_map(move |n| (0..self.dim(n)).map(move |i| BasisId::new(n, i)))
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    pub fn is_connective(&self) -> bool {
        self.lo >= 0
    }

    /// `d_n`, a `dim(n-1) x dim(n)` matrix (zero outside the range).
    pub fn differential(&self, n: i64) -> ExactMatrix {
        if self.in_range(n) {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            ExactMatrix::zeros(self.ring, self.dim(n - 1), self.dim(n))
        }
    }

    pub fn zero(&self, n: i64) -> Vec<Scalar> {
        vec![self.ring.zero(); self.dim(n)]
    }

    pub fn basis_vector(&self, b: BasisId) -> Vec<Scalar> {
        let mut v = self.zero(b.degree);
        v[b.index] = self.ring.one();
        v
    }

    pub fn d(&self, n: i64, x: &[Scalar]) -> Vec<Scalar> {
        if !self.in_range(n) {
            return self.zero(n - 1);
        }
        self.diffs[(n - self.lo) as usize].apply(x)
    }

    pub fn d_basis(&self, b: BasisId) -> Vec<Scalar> {
        self.differential(b.degree).column(b.index)
    }

    /// Structure constants of `a * b` (zero terms omitted).
    pub fn product_terms(&self, a: BasisId, b: BasisId) -> &[(usize, Scalar)] {
        self.products.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn products(&self) -> impl Iterator<Item = (BasisId, BasisId, &Terms)> {
        self.products.iter().map(|((a, b), t)| (*a, *b, t))
    }

    pub fn mul_basis(&self, a: BasisId, b: BasisId) -> Vec<Scalar> {
        let mut v = self.zero(a.degree + b.degree);
        for (k, c) in self.product_terms(a, b) {
            v[*k] = self.ring.add(&v[*k], c);
        }
        v
    }

    /// Product of homogeneous elements `x` (degree `da`) and `y` (degree `db`).
    pub fn mul(&self, da: i64, x: &[Scalar], db: i64, y: &[Scalar]) -> Vec<Scalar> {
        let r = self.ring;
        let mut v = self.zero(da + db);
        if v.is_empty() {
            return v;
        }
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !r.is_zero(a)) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !r.is_zero(b)) {
                let ab = r.mul(a, b);
                for (k, c) in self.product_terms(BasisId::new(da, i), BasisId::new(db, j)) {
                    v[*k] = r.add(&v[*k], &r.mul(&ab, c));
                }
            }
        }
        v
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Index of the unit when it is a basis element.
    pub fn unit_index(&self) -> Option<usize> {
        let r = self.ring;
        let nz: Vec<usize> = (0..self.unit.len()).filter(|&i| !r.is_zero(&self.unit[i])).collect();
        match nz.as_slice() {
            [i] if self.unit[*i] == r.one() => Some(*i),
            _ => None,
        }
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let mut c = ChainComplex::new(self.ring);
        for n in self.lo..=self.hi {
            c.set_dim(n, self.dim(n));
        }
        for n in self.lo..=self.hi {
            c.set_differential(n, self.differential(n)).expect("shapes checked at construction");
        }
        c
    }

    /// The ground ring concentrated in degree 0.
    pub fn unit_dga(ring: Ring) -> Dga {
        let one = BasisId::new(0, 0);
        DgaBuilder::new("unit", ring, 0, 0)
            .basis(0, ["1"])
            .product(one, one, 0, ring.one())
            .unit_index(0)
            .build()
            .expect("valid")
    }
}

impl fmt::Display for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DGA {} over {} in degrees {}..{}", self.name, self.ring, self.lo, self.hi)?;
        for n in self.lo..=self.hi {
            let ds: Vec<String> = (0..self.dim(n))
                .filter_map(|i| {
                    let col = self.d_basis(BasisId::new(n, i));
                    let terms = render_terms(self.ring, &col, self.labels(n - 1));
                    (terms != "0").then(|| format!("d({}) = {terms}", self.labels(n)[i]))
                })
                .collect();
            write!(f, "  {n:>3}: [{}]", self.labels(n).join(", "))?;
            if !ds.is_empty() {
                write!(f, "   {}", ds.join("; "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Renders a coordinate vector as `2*a - b`.
pub fn render_terms(ring: Ring, v: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (i, a) in v.iter().enumerate() {
        if ring.is_zero(a) {
            continue;
        }
        let c = ring.display(a);
        let (neg, c) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if c != "1" {
            if c.contains('+') {
                out.push_str(&format!("({c})*"));
            } else {
                out.push_str(&format!("{c}*"));
            }
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Incremental constructor. Differential and product entries accumulate.
#[derive(Clone, Debug)]
pub struct DgaBuilder {
    name: String,
    ring: Ring,
    lo: i64,
    hi: i64,
    basis: BTreeMap<i64, Vec<String>>,
    d: Vec<(BasisId, usize, Scalar)>,
    products: Vec<(BasisId, BasisId, usize, Scalar)>,
    unit: Option<Vec<Scalar>>,
    unit_index: Option<usize>,
    exact_below: Option<i64>,
}

impl DgaBuilder {
    pub fn new(name: impl Into<String>, ring: Ring, lo: i64, hi: i64) -> Self {
        DgaBuilder {
            name: name.into(),
            ring,
            lo,
            hi,
            basis: BTreeMap::new(),
            d: Vec::new(),
            products: Vec::new(),
            unit: None,
            unit_index: None,
            exact_below: None,
        }
    }

    pub fn basis<S: Into<String>>(mut self, degree: i64, labels: impl IntoIterator<Item = S>) -> Self {
        self.basis.insert(degree, labels.into_iter().map(Into::into).collect());
        self
    }

    /// Adds `coeff * target` (in degree `source.degree - 1`) to `d(source)`.
    pub fn d(mut self, source: BasisId, target: usize, coeff: Scalar) -> Self {
        self.d.push((source, target, coeff));
        self
    }

    /// Adds `coeff * target` (in degree `a.degree + b.degree`) to `a * b`.
    pub fn product(mut self, a: BasisId, b: BasisId, target: usize, coeff: Scalar) -> Self {
        self.products.push((a, b, target, coeff));
        self
    }

    pub fn unit_index(mut self, i: usize) -> Self {
        self.unit_index = Some(i);
        self
    }

    pub fn unit_vector(mut self, v: Vec<Scalar>) -> Self {
        self.unit = Some(v);
        self
    }

    pub fn exact_below(mut self, e: Option<i64>) -> Self {
        self.exact_below = e;
        self
    }

    pub fn build(self) -> Result<Dga> {
        let ring = self.ring;
        let bad = |m: String| Err(Error::InvalidDga(m));
        if self.lo > 0 || self.hi < 0 {
            return bad(format!("degree range {}..{} must contain 0", self.lo, self.hi));
        }
        if let Some((&n, _)) = self.basis.iter().find(|(&n, _)| n < self.lo || n > self.hi) {
            return bad(format!("basis given in degree {n} outside {}..{}", self.lo, self.hi));
        }
        let basis: Vec<Vec<String>> =
            (self.lo..=self.hi).map(|n| self.basis.get(&n).cloned().unwrap_or_default()).collect();
        let dim = |n: i64| -> usize {
            if n < self.lo || n > self.hi {
                0
            } else {
                basis[(n - self.lo) as usize].len()
            }
        };
        let check_id = |b: BasisId| -> Result<()> {
            if b.index >= dim(b.degree) {
                return Err(Error::InvalidDga(format!("no basis element {} in degree {}", b.index, b.degree)));
            }
            Ok(())
        };
        let mut diffs: Vec<ExactMatrix> =
            (self.lo..=self.hi).map(|n| ExactMatrix::zeros(ring, dim(n - 1), dim(n))).collect();
        for (src, tgt, c) in &self.d {
            check_id(*src)?;
            if !ring.contains(c) {
                return bad(format!("coefficient of d at {src:?} is not in {ring}"));
            }
            if *tgt >= dim(src.degree - 1) {
                return bad(format!("d target {tgt} out of range in degree {}", src.degree - 1));
            }
            diffs[(src.degree - self.lo) as usize].add_to(*tgt, src.index, c);
        }
        let mut products: BTreeMap<(BasisId, BasisId), Terms> = BTreeMap::new();
        for (a, b, tgt, c) in &self.products {
            check_id(*a)?;
            check_id(*b)?;
            if !ring.contains(c) {
                return bad(format!("coefficient of product {a:?}*{b:?} is not in {ring}"));
            }
            if *tgt >= dim(a.degree + b.degree) {
                return bad(format!("product target {tgt} out of range in degree {}", a.degree + b.degree));
            }
            let terms = products.entry((*a, *b)).or_default();
            match terms.iter_mut().find(|(k, _)| k == tgt) {
                Some((_, v)) => *v = ring.add(v, c),
                None => terms.push((*tgt, c.clone())),
            }
        }
        for terms in products.values_mut() {
            terms.retain(|(_, c)| !ring.is_zero(c));
            terms.sort_by_key(|(k, _)| *k);
        }
        products.retain(|_, t| !t.is_empty());
        let unit = match (self.unit, self.unit_index) {
            (Some(v), None) => v,
            (None, Some(i)) => {
                if i >= dim(0) {
                    return bad(format!("unit index {i} out of range"));
                }
                let mut v = vec![ring.zero(); dim(0)];
                v[i] = ring.one();
                v
            }
            (None, None) => return bad("no unit given".into()),
            (Some(_), Some(_)) => return bad("unit given twice".into()),
        };
        if unit.len() != dim(0) || unit.iter().any(|a| !ring.contains(a)) {
            return bad("unit vector has the wrong length or ring".into());
        }
        Ok(Dga {
            name: self.name,
            ring,
            lo: self.lo,
            hi: self.hi,
            basis,
            diffs,
            products,
            unit,
            exact_below: self.exact_below,
        })
    }
}
