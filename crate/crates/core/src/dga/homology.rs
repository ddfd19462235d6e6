use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::dga::{render_terms, validate, Dga};
use crate::error::{Error, Result};
use crate::linalg::{homology_basis, homology_of_complex, HomologyBasis, HomologyGroup, Ring, Scalar};

/// Per-degree homology of the underlying chain complex. Checks `d^2 = 0`
/// only; use [`validate`] for the full axioms.
pub fn homology(x: &Dga, range: RangeInclusive<i64>) -> Result<BTreeMap<i64, HomologyGroup>> {
    homology_of_complex(&x.chain_complex(), range)
}

/// Generator `k` of degree `n`, as `(n, k)`.
pub type ClassIndex = (i64, usize);

/// Homology with chosen generators and the multiplication table between
/// them. Generator `k` in degree `n` is the `k`-th cyclic summand of `H_n`.
#[derive(Clone, Debug)]
pub struct HomologyRing {
    ring: Ring,
    range: RangeInclusive<i64>,
    bases: BTreeMap<i64, HomologyBasis>,
    labels: BTreeMap<i64, Vec<String>>,
    table: BTreeMap<(ClassIndex, ClassIndex), Vec<Scalar>>,
}

fn prime_power_base(n: &BigInt) -> Option<BigInt> {
    let mut n = n.abs();
    if n <= BigInt::one() {
        return None;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            while n.is_multiple_of(&p) {
                n /= &p;
            }
            return if n.is_one() { Some(p) } else { None };
        }
        p += 1;
    }
    Some(n)
}

/// All torsion must be `q`-power torsion for a single prime `q` (over Z) or
/// a power of `u` (over F_p[u]).
fn check_single_prime(ring: Ring, groups: &BTreeMap<i64, HomologyGroup>) -> Result<()> {
    let mut base: Option<BigInt> = None;
    for (n, g) in groups {
        for t in &g.torsion {
            match t {
                Scalar::Int(v) => {
                    let q = prime_power_base(v).ok_or_else(|| {
                        Error::MixedTorsion(format!("H_{n} has torsion Z/{v}, not of prime-power order"))
                    })?;
                    match &base {
                        Some(b) if *b != q => {
                            return Err(Error::MixedTorsion(format!("torsion at primes {b} and {q}")))
                        }
                        _ => base = Some(q),
                    }
                }
                Scalar::Poly(f) => {
                    let single_term = f.coeffs().iter().filter(|c| **c != 0).count() == 1;
                    if !single_term || f.degree() == Some(0) {
                        return Err(Error::MixedTorsion(format!(
                            "H_{n} has torsion F_p[u]/({}), not a power of u",
                            ring.display(t)
                        )));
                    }
                }
                Scalar::Fp(_) => {}
            }
        }
    }
    Ok(())
}

/// Homology ring in the given degree range. Products are computed on
/// representative cycles and read off in the target degree's generators;
/// only products landing inside the range are tabulated.
pub fn homology_ring(x: &Dga, range: RangeInclusive<i64>) -> Result<HomologyRing> {
    if let Some(v) = validate(x).into_iter().next() {
        return Err(Error::InvalidDga(v.to_string()));
    }
    let ring = x.ring();
    let complex = x.chain_complex();
    let mut bases = BTreeMap::new();
    for n in range.clone() {
        bases.insert(n, homology_basis(&complex, n)?);
    }
    let groups: BTreeMap<i64, HomologyGroup> = bases.iter().map(|(n, b)| (*n, b.group.clone())).collect();
    check_single_prime(ring, &groups)?;
    let labels = bases
        .iter()
        .map(|(n, b)| {
            let ls = b.representatives.iter().map(|z| format!("[{}]", render_terms(ring, z, x.labels(*n)))).collect();
            (*n, ls)
        })
        .collect();
    let mut table = BTreeMap::new();
    for (&i, bi) in &bases {
        for (&j, bj) in &bases {
            let Some(bk) = bases.get(&(i + j)) else { continue };
            for (a, za) in bi.representatives.iter().enumerate() {
                for (b, zb) in bj.representatives.iter().enumerate() {
                    let prod = x.mul(i, za, j, zb);
                    table.insert(((i, a), (j, b)), bk.classify(&prod)?);
                }
            }
        }
    }
    Ok(HomologyRing { ring, range, bases, labels, table })
}

impl HomologyRing {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn range(&self) -> RangeInclusive<i64> {
        self.range.clone()
    }

    pub fn group(&self, n: i64) -> Option<&HomologyGroup> {
        self.bases.get(&n).map(|b| &b.group)
    }

    /// Number of cyclic generators of `H_n`.
    pub fn generator_count(&self, n: i64) -> usize {
        self.bases.get(&n).map_or(0, |b| b.representatives.len())
    }

    pub fn representative(&self, n: i64, k: usize) -> &[Scalar] {
        &self.bases[&n].representatives[k]
    }

    pub fn generator_label(&self, n: i64, k: usize) -> &str {
        &self.labels[&n][k]
    }

    /// Order of generator `k` in degree `n`; `None` for free generators.
    pub fn order(&self, n: i64, k: usize) -> Option<&Scalar> {
        self.bases[&n].orders[k].as_ref()
    }

    /// Coordinates of `g_a * g_b` in the generators of the target degree.
    pub fn product(&self, a: (i64, usize), b: (i64, usize)) -> Option<&[Scalar]> {
        self.table.get(&(a, b)).map(Vec::as_slice)
    }

    /// Class coordinates of a cycle in degree `n`.
    pub fn class_of(&self, n: i64, z: &[Scalar]) -> Result<Vec<Scalar>> {
        self.bases.get(&n).ok_or_else(|| Error::Input(format!("degree {n} is outside the computed range")))?.classify(z)
    }

    /// Class of the product of two cycles.
    pub fn multiply_cycles(&self, x: &Dga, i: i64, za: &[Scalar], j: i64, zb: &[Scalar]) -> Result<Vec<Scalar>> {
        self.class_of(i + j, &x.mul(i, za, j, zb))
    }

    /// Class of `g^k` for generator `g = (n, index)`, or `None` when `kn`
    /// leaves the range.
    pub fn power(&self, x: &Dga, g: (i64, usize), k: u32) -> Result<Option<Vec<Scalar>>> {
        let (n, idx) = g;
        let target = n * k as i64;
        if !self.bases.contains_key(&target) {
            return Ok(None);
        }
        let mut z = x.unit().to_vec();
        let mut deg = 0;
        for _ in 0..k {
            z = x.mul(deg, &z, n, self.representative(n, idx));
            deg += n;
        }
        self.class_of(target, &z).map(Some)
    }

    pub fn is_zero_class(&self, coords: &[Scalar]) -> bool {
        coords.iter().all(|a| self.ring.is_zero(a))
    }
}

impl fmt::Display for HomologyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, b) in &self.bases {
            write!(f, "H_{n} = {}", b.group)?;
            if !b.representatives.is_empty() {
                write!(f, "   generators: {}", self.labels[n].join(", "))?;
            }
            writeln!(f)?;
        }
        let mut lines = Vec::new();
        for (((i, a), (j, b)), coords) in &self.table {
            if *i == 0 || *j == 0 || self.is_zero_class(coords) {
                continue;
            }
            let target: Vec<String> = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !self.ring.is_zero(c))
                .map(|(k, c)| {
                    let c = self.ring.display(c);
                    let l = &self.labels[&(i + j)][k];
                    if c == "1" {
                        l.clone()
                    } else {
                        format!("{c}*{l}")
                    }
                })
                .collect();
            lines.push(format!("  {} * {} = {}", self.labels[i][*a], self.labels[j][*b], target.join(" + ")));
        }
        if !lines.is_empty() {
            writeln!(f, "nonzero products:")?;
            for l in lines {
                writeln!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{builtin_endomorphism, builtin_y2, exterior_cone, mod_p_reduction, BasisId, DgaBuilder};
    use crate::linalg::Prime;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn mod_2_y2_is_truncated_polynomial() {
        let x = mod_p_reduction(&builtin_y2(), pr(2)).unwrap();
        let h = homology_ring(&x, 0..=4).unwrap();
        for n in 0..=3 {
            assert_eq!(h.generator_count(n), 1, "degree {n}");
        }
        assert_eq!(h.generator_count(4), 0);
        let xi = (1, 0);
        let sq = h.product(xi, xi).unwrap();
        assert!(!h.is_zero_class(sq));
        let cube = h.power(&x, xi, 3).unwrap().unwrap();
        assert!(!h.is_zero_class(&cube));
        assert_eq!(h.power(&x, xi, 4).unwrap().unwrap(), Vec::<Scalar>::new());
    }

    #[test]
    fn y2_ring_is_exterior() {
        let y = builtin_y2();
        let h = homology_ring(&y, 0..=4).unwrap();
        assert_eq!(h.generator_count(0), 1);
        assert_eq!(h.generator_count(2), 1);
        assert_eq!(h.power(&y, (2, 0), 2).unwrap().unwrap(), Vec::<Scalar>::new());
    }

    #[test]
    fn one_point_ring() {
        let u = Dga::unit_dga(Ring::Integers);
        let h = homology_ring(&u, 0..=0).unwrap();
        assert_eq!(h.group(0).unwrap().free_rank, 1);
        assert_eq!(h.product((0, 0), (0, 0)).unwrap(), &[Ring::Integers.one()]);
    }

    #[test]
    fn mixed_torsion_rejected() {
        // square-zero algebra with Z/3 in degree 2 and Z/2 in degree 4
        let z = Ring::Integers;
        let one = BasisId::new(0, 0);
        let mut b = DgaBuilder::new("mixed", z, 0, 5)
            .basis(0, ["1"])
            .basis(2, ["b"])
            .basis(3, ["c"])
            .basis(4, ["x"])
            .basis(5, ["y"])
            .d(BasisId::new(3, 0), 0, z.from_i64(3))
            .d(BasisId::new(5, 0), 0, z.from_i64(2))
            .product(one, one, 0, z.one())
            .unit_index(0);
        for n in [2, 3, 4, 5] {
            b = b.product(one, BasisId::new(n, 0), 0, z.one()).product(BasisId::new(n, 0), one, 0, z.one());
        }
        let x = b.build().unwrap();
        assert!(validate(&x).is_empty());
        assert!(matches!(homology_ring(&x, 0..=5), Err(Error::MixedTorsion(_))));
        assert!(homology_ring(&x, 0..=3).is_ok());
        let c6 = exterior_cone(z, z.from_i64(6));
        assert!(matches!(homology_ring(&c6, 0..=1), Err(Error::MixedTorsion(_))));
    }

    #[test]
    fn endomorphism_ring() {
        let e = builtin_endomorphism(pr(3));
        let h = homology_ring(&e, -1..=1).unwrap();
        assert_eq!(h.generator_count(-1), 1);
        assert_eq!(h.generator_count(0), 1);
        assert_eq!(h.generator_count(1), 0);
    }

    #[test]
    fn table_ignores_choice_of_representative() {
        let x = mod_p_reduction(&builtin_y2(), pr(2)).unwrap();
        let h = homology_ring(&x, 0..=4).unwrap();
        let ring = x.ring();
        for i in 0..=4 {
            for j in 0..=4 - i {
                for a in 0..h.generator_count(i) {
                    for b in 0..h.generator_count(j) {
                        // add boundaries of every basis element one degree up
                        let mut za = h.representative(i, a).to_vec();
                        for k in 0..x.dim(i + 1) {
                            let db = x.d_basis(crate::dga::BasisId::new(i + 1, k));
                            za = za
                                .iter()
                                .zip(&db)
                                .map(|(u, v)| ring.add(u, &ring.mul(v, &ring.from_i64(k as i64 + 2))))
                                .collect();
                        }
                        let mut zb = h.representative(j, b).to_vec();
                        for k in 0..x.dim(j + 1) {
                            let db = x.d_basis(crate::dga::BasisId::new(j + 1, k));
                            zb = zb.iter().zip(&db).map(|(u, v)| ring.sub(u, v)).collect();
                        }
                        let got = h.multiply_cycles(&x, i, &za, j, &zb).unwrap();
                        assert_eq!(got.as_slice(), h.product((i, a), (j, b)).unwrap());
                    }
                }
            }
        }
    }
}
