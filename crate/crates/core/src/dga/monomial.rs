//! DGAs spanned by monomials in generators of positive degree, with the
//! differential given on generators and extended by the Leibniz rule.

use std::collections::{BTreeMap, HashMap};

use crate::dga::{BasisId, Dga, DgaBuilder};
use crate::error::{Error, Result};
use crate::linalg::{Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialKind {
    Polynomial,
    /// `x^2 = 0`.
    Exterior,
    /// `x^m = 0`.
    Truncated(u32),
}

impl MonomialKind {
    fn allows(self, e: u32) -> bool {
        match self {
            MonomialKind::Polynomial => true,
            MonomialKind::Exterior => e <= 1,
            MonomialKind::Truncated(m) => e < m,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonomialGen {
    pub name: String,
    pub degree: i64,
    pub kind: MonomialKind,
}

impl MonomialGen {
    pub fn new(name: impl Into<String>, degree: i64, kind: MonomialKind) -> Self {
        MonomialGen { name: name.into(), degree, kind }
    }
}

/// Monomials are products `g_1^{a_1} ... g_n^{a_n}` in generator order; the
/// product of two monomials picks up the Koszul sign
/// `(-1)^{sum_{i>j} a_i b_j |g_i||g_j|}` from reordering.
#[derive(Clone, Debug)]
pub struct MonomialDgaSpec {
    pub name: String,
    pub ring: Ring,
    pub generators: Vec<MonomialGen>,
    /// Top degree kept; monomials above it are dropped.
    pub hi: i64,
    /// `d(g_i)` as a list of `(coefficient, exponent vector)`.
    pub differential: Vec<Vec<(Scalar, Vec<u32>)>>,
    pub exact_below: Option<i64>,
}

type Poly = BTreeMap<Vec<u32>, Scalar>;

impl MonomialDgaSpec {
    /// Zero differential on every generator.
    pub fn new(name: impl Into<String>, ring: Ring, generators: Vec<MonomialGen>, hi: i64) -> Self {
        let n = generators.len();
        MonomialDgaSpec {
            name: name.into(),
            ring,
            generators,
            hi,
            differential: vec![Vec::new(); n],
            exact_below: None,
        }
    }

    /// Adds `c * monomial` to `d(g_i)`.
    pub fn with_d(mut self, i: usize, c: Scalar, exponents: Vec<u32>) -> Self {
        self.differential[i].push((c, exponents));
        self
    }

    fn degree(&self, e: &[u32]) -> i64 {
        self.generators.iter().zip(e).map(|(g, &k)| g.degree * k as i64).sum()
    }

    fn allowed(&self, e: &[u32]) -> bool {
        self.generators.iter().zip(e).all(|(g, &k)| g.kind.allows(k))
    }

    fn mono_mul(&self, a: &[u32], b: &[u32]) -> Option<(bool, Vec<u32>)> {
        let c: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if !self.allowed(&c) {
            return None;
        }
        let mut parity = 0i64;
        for (i, (&ai, gi)) in a.iter().zip(&self.generators).enumerate() {
            for (&bj, gj) in b[..i].iter().zip(&self.generators) {
                parity += ai as i64 * bj as i64 * gi.degree * gj.degree;
            }
        }
        Some((parity % 2 != 0, c))
    }

    fn poly_mul(&self, x: &Poly, y: &Poly) -> Poly {
        let r = self.ring;
        let mut out = Poly::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if let Some((neg, c)) = self.mono_mul(a, b) {
                    let v = r.mul(ca, cb);
                    let v = if neg { r.neg(&v) } else { v };
                    let e = out.entry(c).or_insert_with(|| r.zero());
                    *e = r.add(e, &v);
                }
            }
        }
        out.retain(|_, c| !r.is_zero(c));
        out
    }

    fn mono(&self, e: Vec<u32>) -> Poly {
        Poly::from([(e, self.ring.one())])
    }

    fn d_monomial(&self, e: &[u32]) -> Poly {
        let r = self.ring;
        let n = self.generators.len();
        let letters: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let unit = vec![0u32; n];
        let mut out = Poly::new();
        let mut prefix = self.mono(unit.clone());
        let mut prefix_deg = 0i64;
        for (k, &g) in letters.iter().enumerate() {
            let mut suffix_e = unit.clone();
            for &h in &letters[k + 1..] {
                suffix_e[h] += 1;
            }
            let dg: Poly = {
                let mut p = Poly::new();
                for (c, m) in &self.differential[g] {
                    let e = p.entry(m.clone()).or_insert_with(|| r.zero());
                    *e = r.add(e, c);
                }
                p
            };
            let term = self.poly_mul(&self.poly_mul(&prefix, &dg), &self.mono(suffix_e));
            for (m, c) in term {
                let c = r.signed(c, prefix_deg);
                let e = out.entry(m).or_insert_with(|| r.zero());
                *e = r.add(e, &c);
            }
            let mut gen_e = unit.clone();
            gen_e[g] = 1;
            prefix = self.poly_mul(&prefix, &self.mono(gen_e));
            prefix_deg += self.generators[g].degree;
        }
        out.retain(|_, c| !r.is_zero(c));
        out
    }

    fn label(&self, e: &[u32]) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .zip(e)
            .filter(|(_, &k)| k > 0)
            .map(|(g, &k)| if k == 1 { g.name.clone() } else { format!("{}^{k}", g.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    pub fn build(&self) -> Result<Dga> {
        let n = self.generators.len();
        if self.hi < 0 {
            return Err(Error::InvalidDga("top degree must be >= 0".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree < 1 {
                return Err(Error::InvalidDga(format!("generator {} must have positive degree", g.name)));
            }
            for (c, m) in &self.differential[i] {
                if m.len() != n || !self.ring.contains(c) {
                    return Err(Error::InvalidDga(format!("malformed differential on {}", g.name)));
                }
                if self.degree(m) != g.degree - 1 {
                    return Err(Error::InvalidDga(format!("d({}) has a term of the wrong degree", g.name)));
                }
            }
        }
        let mut by_degree: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
        let mut stack = vec![(0usize, vec![0u32; n], 0i64)];
        while let Some((i, e, deg)) = stack.pop() {
            if i == n {
                by_degree.entry(deg).or_default().push(e);
                continue;
            }
            let g = &self.generators[i];
            let mut k = 0u32;
            while g.kind.allows(k) && deg + g.degree * k as i64 <= self.hi {
                let mut e2 = e.clone();
                e2[i] = k;
                stack.push((i + 1, e2, deg + g.degree * k as i64));
                k += 1;
            }
        }
        for v in by_degree.values_mut() {
            v.sort();
        }
        let mut index: HashMap<Vec<u32>, BasisId> = HashMap::new();
        let mut b = DgaBuilder::new(self.name.clone(), self.ring, 0, self.hi).exact_below(self.exact_below);
        for (&deg, monos) in &by_degree {
            for (i, m) in monos.iter().enumerate() {
                index.insert(m.clone(), BasisId::new(deg, i));
            }
            b = b.basis(deg, monos.iter().map(|m| self.label(m)));
        }
        let all: Vec<(&Vec<u32>, BasisId)> = by_degree.values().flatten().map(|m| (m, index[m])).collect();
        for &(m, id) in &all {
            for (t, c) in self.d_monomial(m) {
                let tid = index[&t];
                b = b.d(id, tid.index, c);
            }
        }
        for &(ma, ia) in &all {
            for &(mb, ib) in &all {
                if ia.degree + ib.degree > self.hi {
                    continue;
                }
                if let Some((neg, c)) = self.mono_mul(ma, mb) {
                    let coeff = if neg { self.ring.neg(&self.ring.one()) } else { self.ring.one() };
                    b = b.product(ia, ib, index[&c].index, coeff);
                }
            }
        }
        b.unit_index(0).build()
    }
}
