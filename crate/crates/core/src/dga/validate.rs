use std::fmt;

use serde::Serialize;

use crate::dga::{render_terms, BasisId, Dga};
use crate::linalg::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ViolationKind {
    DSquared,
    Leibniz,
    Associativity,
    Unit,
}

/// A failed axiom together with the basis tuple witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<BasisId>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {:?}: {}", self.kind, self.witness, self.detail)
    }
}

fn sub(x: &Dga, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(u, v)| x.ring().sub(u, v)).collect()
}

fn is_zero(x: &Dga, v: &[Scalar]) -> bool {
    v.iter().all(|a| x.ring().is_zero(a))
}

/// Checks d^2 = 0, the Leibniz rule, associativity and the unit on every
/// basis tuple. An empty result means the DGA is valid.
pub fn validate(x: &Dga) -> Vec<Violation> {
    let mut out = Vec::new();
    let ring = x.ring();
    let ids: Vec<BasisId> = x.basis_ids().collect();

    for &b in &ids {
        let dd = x.d(b.degree - 1, &x.d_basis(b));
        if !is_zero(x, &dd) {
            out.push(Violation {
                kind: ViolationKind::DSquared,
                witness: vec![b],
                detail: format!("d(d({})) = {}", x.label(b), render_terms(ring, &dd, x.labels(b.degree - 2))),
            });
        }
    }

    for &a in &ids {
        let da = x.d_basis(a);
        for &b in &ids {
            let n = a.degree + b.degree;
            let lhs = x.d(n, &x.mul_basis(a, b));
            let left = x.mul(a.degree - 1, &da, b.degree, &x.basis_vector(b));
            let right = x.mul(a.degree, &x.basis_vector(a), b.degree - 1, &x.d_basis(b));
            let rhs: Vec<Scalar> =
                left.iter().zip(&right).map(|(l, r)| ring.add(l, &ring.signed(r.clone(), a.degree))).collect();
            let diff = sub(x, &lhs, &rhs);
            if !is_zero(x, &diff) {
                out.push(Violation {
                    kind: ViolationKind::Leibniz,
                    witness: vec![a, b],
                    detail: format!(
                        "d({}*{}) = {} but Leibniz gives {}",
                        x.label(a),
                        x.label(b),
                        render_terms(ring, &lhs, x.labels(n - 1)),
                        render_terms(ring, &rhs, x.labels(n - 1))
                    ),
                });
            }
        }
    }

    for &a in &ids {
        for &b in &ids {
            let ab = x.mul_basis(a, b);
            for &c in &ids {
                let n = a.degree + b.degree + c.degree;
                if x.dim(n) == 0 {
                    continue;
                }
                let left = x.mul(a.degree + b.degree, &ab, c.degree, &x.basis_vector(c));
                let bc = x.mul_basis(b, c);
                let right = x.mul(a.degree, &x.basis_vector(a), b.degree + c.degree, &bc);
                if left != right {
                    out.push(Violation {
                        kind: ViolationKind::Associativity,
                        witness: vec![a, b, c],
                        detail: format!(
                            "({}*{})*{} = {} but {}*({}*{}) = {}",
                            x.label(a),
                            x.label(b),
                            x.label(c),
                            render_terms(ring, &left, x.labels(n)),
                            x.label(a),
                            x.label(b),
                            x.label(c),
                            render_terms(ring, &right, x.labels(n))
                        ),
                    });
                }
            }
        }
    }

    let unit = x.unit().to_vec();
    let du = x.d(0, &unit);
    if !is_zero(x, &du) {
        out.push(Violation { kind: ViolationKind::Unit, witness: vec![], detail: "d(1) is nonzero".into() });
    }
    for &b in &ids {
        let v = x.basis_vector(b);
        let left = x.mul(0, &unit, b.degree, &v);
        let right = x.mul(b.degree, &v, 0, &unit);
        if left != v || right != v {
            out.push(Violation {
                kind: ViolationKind::Unit,
                witness: vec![b],
                detail: format!("1 is not a two-sided identity on {}", x.label(b)),
            });
        }
    }
    out
}
