use std::collections::HashMap;

use crate::dga::{render_terms, BasisId, Dga, DgaBuilder};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, ExactMatrix, Prime, Ring, Scalar};

/// `Λ_R(e)` with `|e| = 1` and `d(e) = c`.
pub fn exterior_cone(ring: Ring, c: Scalar) -> Dga {
    let one = ring.one();
    let (u, e) = (BasisId::new(0, 0), BasisId::new(1, 0));
    DgaBuilder::new(format!("Λ(e; de={})", ring.display(&c)), ring, 0, 1)
        .basis(0, ["1"])
        .basis(1, ["e"])
        .d(e, 0, c)
        .product(u, u, 0, one.clone())
        .product(u, e, 0, one.clone())
        .product(e, u, 0, one)
        .unit_index(0)
        .build()
        .expect("valid")
}

fn pair_label(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a}⊗{b}"),
    }
}

/// Tensor product with `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db` and
/// `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'`.
pub fn tensor_dga(x: &Dga, y: &Dga) -> Result<Dga> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch { left: x.ring(), right: y.ring() });
    }
    let ring = x.ring();
    let (lo, hi) = (x.lo() + y.lo(), x.hi() + y.hi());
    let mut index: HashMap<(BasisId, BasisId), BasisId> = HashMap::new();
    let mut pairs: Vec<(BasisId, BasisId, BasisId)> = Vec::new();
    let mut b = DgaBuilder::new(format!("{} ⊗ {}", x.name(), y.name()), ring, lo, hi);
    for n in lo..=hi {
        let mut labels = Vec::new();
        for i in x.lo()..=x.hi() {
            let j = n - i;
            for a in 0..x.dim(i) {
                for c in 0..y.dim(j) {
                    let (ia, ic) = (BasisId::new(i, a), BasisId::new(j, c));
                    let id = BasisId::new(n, labels.len());
                    index.insert((ia, ic), id);
                    pairs.push((ia, ic, id));
                    labels.push(pair_label(x.label(ia), y.label(ic)));
                }
            }
        }
        b = b.basis(n, labels);
    }
    for &(a, c, id) in &pairs {
        for (t, v) in x.d_basis(a).iter().enumerate() {
            if !ring.is_zero(v) {
                let tid = index[&(BasisId::new(a.degree - 1, t), c)];
                b = b.d(id, tid.index, v.clone());
            }
        }
        for (t, v) in y.d_basis(c).iter().enumerate() {
            if !ring.is_zero(v) {
                let tid = index[&(a, BasisId::new(c.degree - 1, t))];
                b = b.d(id, tid.index, ring.signed(v.clone(), a.degree));
            }
        }
    }
    for &(a, c, id) in &pairs {
        for &(a2, c2, id2) in &pairs {
            if id.degree + id2.degree > hi || id.degree + id2.degree < lo {
                continue;
            }
            let xa = x.product_terms(a, a2);
            let yc = y.product_terms(c, c2);
            if xa.is_empty() || yc.is_empty() {
                continue;
            }
            let sign = c.degree * a2.degree;
            for (k, u) in xa {
                for (l, v) in yc {
                    let tid = index[&(BasisId::new(a.degree + a2.degree, *k), BasisId::new(c.degree + c2.degree, *l))];
                    b = b.product(id, id2, tid.index, ring.signed(ring.mul(u, v), sign));
                }
            }
        }
    }
    let dim0 = pairs.iter().filter(|(_, _, id)| id.degree == 0).count();
    let mut unit = vec![ring.zero(); dim0];
    for (i, ux) in x.unit().iter().enumerate() {
        for (j, uy) in y.unit().iter().enumerate() {
            let id = index[&(BasisId::new(0, i), BasisId::new(0, j))];
            unit[id.index] = ring.add(&unit[id.index], &ring.mul(ux, uy));
        }
    }
    let exact = match (x.exact_below(), y.exact_below()) {
        (None, None) => None,
        (ex, ey) => {
            let a = ex.map(|e| e + y.lo()).unwrap_or(i64::MAX);
            let c = ey.map(|e| e + x.lo()).unwrap_or(i64::MAX);
            Some(a.min(c))
        }
    };
    b.unit_vector(unit).exact_below(exact).build()
}

/// `Λ_Z(e; de = p) ⊗ X`, the derived reduction of a Z-DGA modulo p.
pub fn mod_p_reduction(x: &Dga, p: Prime) -> Result<Dga> {
    if x.ring() != Ring::Integers {
        return Err(Error::UnsupportedRing { ring: x.ring(), op: "mod_p_reduction" });
    }
    let cone = exterior_cone(Ring::Integers, Ring::Integers.from_i64(p.get() as i64));
    Ok(tensor_dga(&cone, x)?.with_name(format!("mod_{p}({})", x.name())))
}

/// `X ⊗ F_p` by reducing every structure constant (`u = 0` over F_p[u]).
/// Over F_p this is the identity.
pub fn base_change_mod_p(x: &Dga, p: Prime) -> Result<Dga> {
    let ring = x.ring();
    if let Some(q) = ring.prime() {
        if q != p {
            return Err(Error::PrimeMismatch { left: q.get(), right: p.get() });
        }
    }
    let target = Ring::fp(p);
    let red = |a: &Scalar| Scalar::Fp(ring.reduce_mod_p(a, p));
    let mut b = DgaBuilder::new(format!("{} ⊗ F_{p}", x.name()), target, x.lo(), x.hi()).exact_below(x.exact_below());
    for n in x.lo()..=x.hi() {
        b = b.basis(n, x.labels(n).to_vec());
        for (t, s, v) in x.differential(n).iter() {
            b = b.d(BasisId::new(n, s), t, red(v));
        }
    }
    for (a, c, terms) in x.products() {
        for (t, v) in terms {
            b = b.product(a, c, *t, red(v));
        }
    }
    b.unit_vector(x.unit().iter().map(red).collect()).build()
}

/// Good truncation `X[m]` and the quotient map `X -> X[m]`.
#[derive(Clone, Debug)]
pub struct TruncationResult {
    pub dga: Dga,
    pub m: i64,
    /// `quotient[n]` maps `X_n` to `X[m]_n` for `0 <= n <= min(m, hi)`.
    pub quotient: Vec<ExactMatrix>,
}

impl TruncationResult {
    /// Image of a degree-`n` element of `X` (zero above `m`).
    pub fn project(&self, n: i64, v: &[Scalar]) -> Vec<Scalar> {
        if n < 0 || n as usize >= self.quotient.len() {
            return self.dga.zero(n);
        }
        self.quotient[n as usize].apply(v)
    }

    /// Checks the truncation contract against the source `x`: homology agrees
    /// through degree `m` and vanishes above, and the quotient map commutes
    /// with the unit, differentials and products.
    pub fn check_contract(&self, x: &Dga) -> std::result::Result<(), String> {
        let top = x.hi().max(self.m) + 1;
        let hx = crate::dga::homology(x, 0..=top).map_err(|e| e.to_string())?;
        let ht = crate::dga::homology(&self.dga, 0..=top).map_err(|e| e.to_string())?;
        for n in 0..=top {
            let ok = if n <= self.m { hx[&n] == ht[&n] } else { ht[&n].is_zero() };
            if !ok {
                return Err(format!("H_{n}: {} vs {} after truncation at {}", hx[&n], ht[&n], self.m));
            }
        }
        if self.project(0, x.unit()) != self.dga.unit() {
            return Err("quotient map does not preserve the unit".into());
        }
        for a in x.basis_ids() {
            let pa = self.project(a.degree, &x.basis_vector(a));
            if self.project(a.degree - 1, &x.d_basis(a)) != self.dga.d(a.degree, &pa) {
                return Err(format!("quotient map does not commute with d on {}", x.label(a)));
            }
            for c in x.basis_ids() {
                let pc = self.project(c.degree, &x.basis_vector(c));
                let n = a.degree + c.degree;
                if self.project(n, &x.mul_basis(a, c)) != self.dga.mul(a.degree, &pa, c.degree, &pc) {
                    return Err(format!("quotient map is not multiplicative on {}·{}", x.label(a), x.label(c)));
                }
            }
        }
        Ok(())
    }
}

/// Keeps degrees `< m`, replaces degree `m` by `X_m / im d_{m+1}` and drops
/// everything above. The quotient must be free.
pub fn truncate(x: &Dga, m: i64) -> Result<TruncationResult> {
    if !x.is_connective() {
        return Err(Error::InvalidDga(format!("{} is not connective; truncation needs lo = 0", x.name())));
    }
    if m < 0 {
        return Err(Error::Input(format!("truncation degree {m} is negative")));
    }
    let ring = x.ring();
    if m >= x.hi() {
        let quotient = (0..=x.hi()).map(|n| ExactMatrix::identity(ring, x.dim(n))).collect();
        return Ok(TruncationResult { dga: x.clone(), m, quotient });
    }
    let snf = smith_normal_form(&x.differential(m + 1))?;
    let torsion: Vec<String> =
        snf.invariant_factors.iter().filter(|f| !ring.is_unit(f)).map(|f| ring.display(f)).collect();
    if !torsion.is_empty() {
        return Err(Error::UnsupportedTruncation { degree: m, torsion });
    }
    let dm = x.dim(m);
    let r = snf.rank;
    let mut q = ExactMatrix::zeros(ring, dm - r, dm);
    for (i, j, v) in snf.row_transform.iter() {
        if i >= r {
            q.set(i - r, j, v.clone());
        }
    }
    let sections: Vec<Vec<Scalar>> = (r..dm).map(|k| snf.row_transform_inv.column(k)).collect();

    let lift = |id: BasisId| -> Vec<Scalar> {
        if id.degree == m {
            sections[id.index].clone()
        } else {
            x.basis_vector(id)
        }
    };
    let mut b = DgaBuilder::new(format!("{}[{m}]", x.name()), ring, 0, m).exact_below(x.exact_below());
    for n in 0..m {
        b = b.basis(n, x.labels(n).to_vec());
    }
    let top_labels: Vec<String> = sections
        .iter()
        .map(|s| {
            let t = render_terms(ring, s, x.labels(m));
            if s.iter().filter(|a| !ring.is_zero(a)).count() == 1 && !t.contains('*') {
                t
            } else {
                format!("[{t}]")
            }
        })
        .collect();
    b = b.basis(m, top_labels);
    let new_ids: Vec<BasisId> = (0..=m)
        .flat_map(|n| {
            let count = if n == m { dm - r } else { x.dim(n) };
            (0..count).map(move |i| BasisId::new(n, i))
        })
        .collect();
    for &id in &new_ids {
        if id.degree == 0 {
            continue;
        }
        let dv = x.d(id.degree, &lift(id));
        for (t, v) in dv.iter().enumerate() {
            if !ring.is_zero(v) {
                b = b.d(id, t, v.clone());
            }
        }
    }
    for &a in &new_ids {
        for &c in &new_ids {
            let n = a.degree + c.degree;
            if n > m {
                continue;
            }
            let mut prod = x.mul(a.degree, &lift(a), c.degree, &lift(c));
            if n == m {
                prod = q.apply(&prod);
            }
            for (t, v) in prod.iter().enumerate() {
                if !ring.is_zero(v) {
                    b = b.product(a, c, t, v.clone());
                }
            }
        }
    }
    let unit = if m == 0 { q.apply(x.unit()) } else { x.unit().to_vec() };
    let dga = b.unit_vector(unit).build()?;
    let mut quotient: Vec<ExactMatrix> = (0..m).map(|n| ExactMatrix::identity(ring, x.dim(n))).collect();
    quotient.push(q);
    Ok(TruncationResult { dga, m, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{builtin_cone_p, builtin_endomorphism, builtin_formal_polynomial, builtin_y2, homology, validate};

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn summands(x: &Dga, lo: i64, hi: i64) -> Vec<usize> {
        let h = homology(x, lo..=hi).unwrap();
        (lo..=hi).map(|n| h[&n].summands()).collect()
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let y = builtin_y2();
        let t = tensor_dga(&y, &Dga::unit_dga(Ring::Integers)).unwrap();
        assert!(validate(&t).is_empty());
        assert_eq!(t.total_dim(), y.total_dim());
        for n in 0..=3 {
            assert_eq!(t.differential(n), y.differential(n));
            assert_eq!(t.labels(n), y.labels(n));
        }
    }

    #[test]
    fn two_cones() {
        let z = Ring::Integers;
        let c = exterior_cone(z, z.from_i64(2));
        let t = tensor_dga(&c, &c).unwrap();
        assert!(validate(&t).is_empty());
        let h = homology(&t, 0..=2).unwrap();
        assert_eq!(h[&0].torsion, vec![z.from_i64(2)]);
        assert_eq!(h[&1].torsion, vec![z.from_i64(2)]);
        assert!(h[&2].is_zero());
    }

    #[test]
    fn builtin_pairs_tensor_cleanly() {
        let z = vec![builtin_y2(), builtin_cone_p(pr(3)), Dga::unit_dga(Ring::Integers)];
        for a in &z {
            for b in &z {
                assert!(validate(&tensor_dga(a, b).unwrap()).is_empty(), "{} ⊗ {}", a.name(), b.name());
            }
        }
        let e = builtin_endomorphism(pr(2));
        assert!(validate(&tensor_dga(&e, &e).unwrap()).is_empty());
        assert!(matches!(tensor_dga(&e, &z[0]), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn mod_p_examples() {
        let unit = mod_p_reduction(&Dga::unit_dga(Ring::Integers), pr(3)).unwrap();
        assert_eq!(summands(&unit, 0, 1), vec![1, 0]);
        let y = mod_p_reduction(&builtin_y2(), pr(2)).unwrap();
        assert!(validate(&y).is_empty());
        assert_eq!(summands(&y, 0, 4), vec![1, 1, 1, 1, 0]);
        let f = mod_p_reduction(&builtin_formal_polynomial(pr(3), 5).unwrap(), pr(3)).unwrap();
        assert_eq!(summands(&f, 0, 5), vec![1, 1, 0, 0, 1, 1]);
        assert!(mod_p_reduction(&builtin_endomorphism(pr(3)), pr(3)).is_err());
    }

    #[test]
    fn truncation_of_y2_needs_free_quotient() {
        let err = truncate(&builtin_y2(), 2).unwrap_err();
        assert!(matches!(err, Error::UnsupportedTruncation { degree: 2, .. }));
        // im d_2 = 0, so degree 1 survives as is
        let t = truncate(&builtin_y2(), 1).unwrap();
        assert!(validate(&t.dga).is_empty());
        assert_eq!(summands(&t.dga, 0, 3), vec![1, 0, 0, 0]);
        let top = truncate(&builtin_y2(), 5).unwrap();
        assert_eq!(top.dga.total_dim(), 4);
        assert!(truncate(&builtin_endomorphism(pr(3)), 0).is_err());
    }

    #[test]
    fn truncation_contract_on_reductions() {
        let x = base_change_mod_p(&mod_p_reduction(&builtin_y2(), pr(2)).unwrap(), pr(2)).unwrap();
        for m in 0..=4 {
            let t = truncate(&x, m).unwrap();
            assert!(validate(&t.dga).is_empty(), "m = {m}");
            t.check_contract(&x).unwrap();
        }
    }

    #[test]
    fn contract_checker_catches_a_wrong_map() {
        let x = base_change_mod_p(&builtin_y2(), pr(2)).unwrap();
        let mut t = truncate(&x, 1).unwrap();
        assert!(t.check_contract(&x).is_ok());
        t.quotient[0] = ExactMatrix::zeros(x.ring(), 1, 1);
        assert!(t.check_contract(&x).is_err());
    }
}
