//! JSON schema for DGAs. The sample below lists only one product; real files
//! list every nonzero product of basis elements, unit products included.
//!
//! ```json
//! {
//!   "name": "Y2",
//!   "ring": {"kind": "Z"},
//!   "lo": 0, "hi": 3,
//!   "basis": [["1"], ["e1"], ["e1^2"], ["e1^3"]],
//!   "differential": [{"source": [1, 0], "target": 0, "coeff": 2}],
//!   "products": [{"left": [1, 0], "right": [1, 0], "target": 0, "coeff": 1}],
//!   "unit": 0
//! }
//! ```
//!
//! `basis[k]` lists the labels in degree `lo + k`. Basis elements are
//! referenced as `[degree, index]`. Coefficients are integers over Z and F_p
//! (strings are accepted for large integers) and coefficient lists
//! `[c0, c1, ...]` over F_p[u]. `unit` is an index or a coefficient list in
//! degree 0.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dga::{BasisId, Dga, DgaBuilder};
use crate::error::{Error, Result};
use crate::linalg::{FpPoly, Ring, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DgaJson {
    #[serde(default = "default_name")]
    pub name: String,
    pub ring: Ring,
    pub lo: i64,
    pub hi: i64,
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub differential: Vec<DiffEntry>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    pub unit: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_below: Option<i64>,
}

fn default_name() -> String {
    "input".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiffEntry {
    pub source: (i64, usize),
    pub target: usize,
    pub coeff: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: (i64, usize),
    pub right: (i64, usize),
    pub target: usize,
    pub coeff: Value,
}

fn parse_scalar(ring: Ring, v: &Value) -> Result<Scalar> {
    let bad = || Error::Input(format!("coefficient {v} is not an element of {ring}"));
    match (ring, v) {
        (Ring::Integers, Value::String(s)) => Ok(Scalar::Int(s.parse::<BigInt>().map_err(|_| bad())?)),
        (_, Value::Number(n)) => Ok(ring.from_i64(n.as_i64().ok_or_else(bad)?)),
        (Ring::FpPoly { p }, Value::Array(cs)) => {
            let p = p.get();
            let coeffs = cs
                .iter()
                .map(|c| c.as_i64().map(|c| c.rem_euclid(p as i64) as u32).ok_or_else(bad))
                .collect::<Result<Vec<u32>>>()?;
            Ok(Scalar::Poly(FpPoly::from_coeffs(coeffs, p)))
        }
        _ => Err(bad()),
    }
}

fn scalar_json(ring: Ring, a: &Scalar) -> Value {
    match a {
        Scalar::Poly(f) => Value::Array(f.coeffs().iter().map(|&c| Value::from(c)).collect()),
        _ => match ring.to_i64(a) {
            Some(n) => Value::from(n),
            None => Value::String(ring.display(a)),
        },
    }
}

impl DgaJson {
    pub fn into_dga(self) -> Result<Dga> {
        let ring = self.ring;
        if self.hi < self.lo || self.basis.len() as i64 != self.hi - self.lo + 1 {
            return Err(Error::Input(format!(
                "basis must list {} degrees ({}..{})",
                self.hi - self.lo + 1,
                self.lo,
                self.hi
            )));
        }
        let mut b = DgaBuilder::new(self.name, ring, self.lo, self.hi).exact_below(self.exact_below);
        for (k, labels) in self.basis.into_iter().enumerate() {
            b = b.basis(self.lo + k as i64, labels);
        }
        for e in &self.differential {
            b = b.d(BasisId::new(e.source.0, e.source.1), e.target, parse_scalar(ring, &e.coeff)?);
        }
        for e in &self.products {
            b = b.product(
                BasisId::new(e.left.0, e.left.1),
                BasisId::new(e.right.0, e.right.1),
                e.target,
                parse_scalar(ring, &e.coeff)?,
            );
        }
        b = match &self.unit {
            Value::Number(n) => b.unit_index(n.as_u64().ok_or_else(|| Error::Input("bad unit index".into()))? as usize),
            Value::Array(cs) => b.unit_vector(cs.iter().map(|c| parse_scalar(ring, c)).collect::<Result<_>>()?),
            _ => return Err(Error::Input("unit must be an index or a coefficient list".into())),
        };
        b.build()
    }

    pub fn from_dga(x: &Dga) -> Self {
        let ring = x.ring();
        let mut differential = Vec::new();
        for n in x.lo()..=x.hi() {
            for (t, s, v) in x.differential(n).iter() {
                differential.push(DiffEntry { source: (n, s), target: t, coeff: scalar_json(ring, v) });
            }
        }
        let mut products = Vec::new();
        for (a, b, terms) in x.products() {
            for (t, v) in terms {
                products.push(ProductEntry {
                    left: (a.degree, a.index),
                    right: (b.degree, b.index),
                    target: *t,
                    coeff: scalar_json(ring, v),
                });
            }
        }
        let unit = match x.unit_index() {
            Some(i) => Value::from(i),
            None => Value::Array(x.unit().iter().map(|a| scalar_json(ring, a)).collect()),
        };
        DgaJson {
            name: x.name().to_string(),
            ring,
            lo: x.lo(),
            hi: x.hi(),
            basis: (x.lo()..=x.hi()).map(|n| x.labels(n).to_vec()).collect(),
            differential,
            products,
            unit,
            exact_below: x.exact_below(),
        }
    }
}

impl Dga {
    pub fn from_json(text: &str) -> Result<Dga> {
        serde_json::from_str::<DgaJson>(text)?.into_dga()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DgaJson::from_dga(self)).expect("serializable")
    }
}
