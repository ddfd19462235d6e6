//! Cyclic bar complexes with coefficients in F_p through the augmentation.
//!
//! A chain in total degree `n` is a word `[a1|...|am]` of basis elements with
//! `m + Σ|ai| = n`. The differential is `Σ_i (-1)^i d_i + (-1)^m ∂`, where the
//! `d_i` are the Hochschild faces and `∂` is the internal differential of
//! `X^{⊗m}` with Koszul signs.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::dga::{base_change_mod_p, BasisId, Dga};
use crate::error::{Error, Result};
use crate::linalg::{Prime, Ring, Scalar, SparseFpMatrix};

/// Letter table of `X ⊗ F_p`.
#[derive(Clone, Debug)]
struct Letters {
    p: u32,
    ids: Vec<BasisId>,
    labels: Vec<String>,
    degree: Vec<i64>,
    /// Letter index of the unit, when it is a letter (unnormalized only).
    unit: Option<u32>,
    d: Vec<Vec<(u32, u32)>>,
    mul: HashMap<(u32, u32), Vec<(u32, u32)>>,
}

impl Letters {
    fn new(x: &Dga, normalized: bool) -> Self {
        let p = match x.ring() {
            Ring::PrimeField { p } => p.get(),
            _ => unreachable!("reduced before use"),
        };
        let lo = if normalized { 1 } else { 0 };
        let ids: Vec<BasisId> = x.basis_ids().filter(|b| b.degree >= lo).collect();
        let index: HashMap<BasisId, u32> = ids.iter().enumerate().map(|(i, b)| (*b, i as u32)).collect();
        let fp = |a: &Scalar| match a {
            Scalar::Fp(v) => *v,
            _ => unreachable!(),
        };
        let d = ids
            .iter()
            .map(|b| {
                x.d_basis(*b)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| fp(c) != 0)
                    .filter_map(|(t, c)| index.get(&BasisId::new(b.degree - 1, t)).map(|&l| (l, fp(c))))
                    .collect()
            })
            .collect();
        let mut mul = HashMap::new();
        for (a, b, terms) in x.products() {
            let (Some(&la), Some(&lb)) = (index.get(&a), index.get(&b)) else { continue };
            let out: Vec<(u32, u32)> = terms
                .iter()
                .filter(|(_, c)| fp(c) != 0)
                .filter_map(|(t, c)| index.get(&BasisId::new(a.degree + b.degree, *t)).map(|&l| (l, fp(c))))
                .collect();
            if !out.is_empty() {
                mul.insert((la, lb), out);
            }
        }
        Letters {
            p,
            labels: ids.iter().map(|b| x.label(*b).to_string()).collect(),
            degree: ids.iter().map(|b| b.degree).collect(),
            unit: if normalized { None } else { index.get(&BasisId::new(0, 0)).copied() },
            ids,
            d,
            mul,
        }
    }

    fn cost(&self, l: u32) -> i64 {
        self.degree[l as usize] + 1
    }
}

/// The truncated cyclic bar complex `CB(X; F_p)` in total degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct CyclicBarComplex {
    input: String,
    prime: Prime,
    top: i64,
    normalized: bool,
    exact_below: Option<i64>,
    letters: Letters,
    words: Vec<Vec<Vec<u32>>>,
    /// `diffs[n]` has one row per word of degree `n`: its boundary in degree `n - 1`.
    diffs: Vec<SparseFpMatrix>,
}

fn check_input(x: &Dga, p: Prime) -> Result<Dga> {
    match x.ring() {
        Ring::Integers => {}
        Ring::PrimeField { p: q } if q == p => {}
        Ring::PrimeField { p: q } => return Err(Error::PrimeMismatch { left: q.get(), right: p.get() }),
        ring => return Err(Error::UnsupportedRing { ring, op: "cyclic_bar" }),
    }
    if !x.is_connective() {
        return Err(Error::InvalidDga(format!("{} is not connective (lowest degree {})", x.name(), x.lo())));
    }
    if x.dim(0) != 1 || x.unit_index() != Some(0) {
        return Err(Error::InvalidDga(format!("degree 0 of {} must be spanned by the unit", x.name())));
    }
    let xp = base_change_mod_p(x, p)?;
    if !xp.differential(1).iter().all(|(_, _, v)| xp.ring().is_zero(v)) {
        return Err(Error::InvalidDga(format!(
            "the augmentation {} -> F_{p} is not a chain map: d(degree 1) hits the unit with a unit coefficient",
            x.name()
        )));
    }
    Ok(xp)
}

fn sign(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

impl CyclicBarComplex {
    /// Builds the normalized complex through total degree `top`.
    pub fn build(x: &Dga, p: Prime, top: i64) -> Result<Self> {
        Self::assemble(x, p, top, true)
    }

    /// The unnormalized complex (all letters, including the unit). Word
    /// counts grow quickly; meant for small cross-checks.
    pub fn build_unnormalized(x: &Dga, p: Prime, top: i64) -> Result<Self> {
        Self::assemble(x, p, top, false)
    }

    fn assemble(x: &Dga, p: Prime, top: i64, normalized: bool) -> Result<Self> {
        if top < 0 {
            return Err(Error::Input("total degree bound must be >= 0".into()));
        }
        let xp = check_input(x, p)?;
        let letters = Letters::new(&xp, normalized);
        let mut by_cost: Vec<Vec<u32>> = vec![Vec::new(); top as usize + 1];
        for l in 0..letters.ids.len() as u32 {
            let c = letters.cost(l);
            if c <= top {
                by_cost[c as usize].push(l);
            }
        }
        let mut words: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
        for n in 1..=top as usize {
            let mut here = Vec::new();
            for c in 1..=n {
                for &l in &by_cost[c] {
                    for w in &words[n - c] {
                        let mut v = Vec::with_capacity(w.len() + 1);
                        v.push(l);
                        v.extend_from_slice(w);
                        here.push(v);
                    }
                }
            }
            here.sort_unstable();
            words.push(here);
        }
        let mut cb = CyclicBarComplex {
            input: x.name().to_string(),
            prime: p,
            top,
            normalized,
            exact_below: x.exact_below(),
            letters,
            words,
            diffs: Vec::new(),
        };
        let diffs: Vec<SparseFpMatrix> =
            (0..=top as usize).into_par_iter().map(|n| cb.differential_matrix(n)).collect();
        cb.diffs = diffs;
        Ok(cb)
    }

    fn differential_matrix(&self, n: usize) -> SparseFpMatrix {
        let p = self.letters.p;
        if n == 0 {
            return SparseFpMatrix::new(p, 0);
        }
        let index: HashMap<&[u32], usize> =
            self.words[n - 1].iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let rows: Vec<Vec<(usize, u32)>> = self.words[n].par_iter().map(|w| self.boundary(w, &index)).collect();
        let mut m = SparseFpMatrix::new(p, self.words[n - 1].len());
        for r in rows {
            m.push_row(r);
        }
        m
    }

    fn boundary(&self, w: &[u32], index: &HashMap<&[u32], usize>) -> Vec<(usize, u32)> {
        let lt = &self.letters;
        let p = lt.p;
        let m = w.len();
        let mut out = Vec::new();
        let mut push = |word: Vec<u32>, c: u32, negative: bool| {
            let c = c % p;
            if c == 0 {
                return;
            }
            if let Some(&i) = index.get(word.as_slice()) {
                out.push((i, if negative { (p - c) % p } else { c }));
            }
        };
        if let Some(u) = lt.unit {
            if m > 0 && w[0] == u {
                push(w[1..].to_vec(), 1, false);
            }
            if m > 0 && w[m - 1] == u {
                push(w[..m - 1].to_vec(), 1, sign(m as i64));
            }
        }
        for i in 1..m {
            if let Some(terms) = lt.mul.get(&(w[i - 1], w[i])) {
                for &(l, c) in terms {
                    let mut v = Vec::with_capacity(m - 1);
                    v.extend_from_slice(&w[..i - 1]);
                    v.push(l);
                    v.extend_from_slice(&w[i + 1..]);
                    push(v, c, sign(i as i64));
                }
            }
        }
        let mut koszul = m as i64;
        for j in 0..m {
            for &(l, c) in &lt.d[w[j] as usize] {
                let mut v = w.to_vec();
                v[j] = l;
                push(v, c, sign(koszul));
            }
            koszul += lt.degree[w[j] as usize];
        }
        out
    }

    pub fn input(&self) -> &str {
        &self.input
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    /// Highest total degree with chains.
    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn exact_below(&self) -> Option<i64> {
        self.exact_below
    }

    pub fn dim(&self, n: i64) -> usize {
        if (0..=self.top).contains(&n) {
            self.words[n as usize].len()
        } else {
            0
        }
    }

    pub fn word_label(&self, n: i64, i: usize) -> String {
        let w = &self.words[n as usize][i];
        let parts: Vec<&str> = w.iter().map(|&l| self.letters.labels[l as usize].as_str()).collect();
        format!("[{}]", parts.join("|"))
    }

    /// Boundary rows of `d_n`: row `i` is the image of word `i` of degree `n`.
    pub fn differential(&self, n: i64) -> Option<&SparseFpMatrix> {
        (1..=self.top).contains(&n).then(|| &self.diffs[n as usize])
    }

    /// Checks `d_{n-1} ∘ d_n = 0` for every `n <= top`.
    pub fn check_d_squared(&self) -> Result<()> {
        let p = self.letters.p as u64;
        for n in 2..=self.top as usize {
            let (outer, inner) = (&self.diffs[n - 1], &self.diffs[n]);
            let bad = inner.rows().par_iter().any(|row| {
                let mut acc: HashMap<usize, u64> = HashMap::new();
                for &(k, c) in row {
                    for &(t, e) in &outer.rows()[k] {
                        let v = acc.entry(t).or_default();
                        *v = (*v + c as u64 * e as u64) % p;
                    }
                }
                acc.values().any(|&v| v != 0)
            });
            if bad {
                return Err(Error::InvalidComplex { degree: n as i64 - 1 });
            }
        }
        Ok(())
    }

    fn rank(&self, n: i64) -> usize {
        self.differential(n).map_or(0, SparseFpMatrix::rank)
    }

    /// `dim H_n` for `0 <= n < top`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.top).into_par_iter().map(|n| self.rank(n)).collect();
        (0..self.top as usize).map(|n| self.words[n].len() - ranks[n] - ranks[n + 1]).collect()
    }
}

/// The normalized cyclic bar complex through total degree `n`, with `d² = 0`
/// verified.
pub fn cyclic_bar(x: &Dga, p: Prime, n: i64) -> Result<CyclicBarComplex> {
    let cb = CyclicBarComplex::build(x, p, n)?;
    cb.check_d_squared()?;
    Ok(cb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GeneratorKind, GradedAlgebraPresentation};
    use crate::dga::{builtin_endomorphism, builtin_y2, from_presentation, mod_p_reduction};

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn unit_dga_is_f_p() {
        let cb = cyclic_bar(&Dga::unit_dga(Ring::Integers), pr(3), 5).unwrap();
        assert_eq!(cb.homology_dims(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn y2_word_counts() {
        // letters e1, e1^2, e1^3 cost 2, 3, 4
        let cb = cyclic_bar(&builtin_y2(), pr(2), 6).unwrap();
        let dims: Vec<usize> = (0..=6).map(|n| cb.dim(n)).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 2, 2, 4]);
        assert_eq!(cb.word_label(4, 0), "[e1|e1]");
    }

    #[test]
    fn y2_homology() {
        let cb = cyclic_bar(&builtin_y2(), pr(2), 7).unwrap();
        assert_eq!(cb.homology_dims(), vec![1, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(cyclic_bar(&builtin_endomorphism(pr(2)), pr(2), 3), Err(Error::UnsupportedRing { .. })));
        // d(e1) = 2 is not zero mod 3
        assert!(matches!(cyclic_bar(&builtin_y2(), pr(3), 3), Err(Error::InvalidDga(_))));
        let f3 =
            from_presentation(&GradedAlgebraPresentation::single(pr(3), "x", 2, GeneratorKind::Exterior).unwrap(), 4)
                .unwrap();
        assert!(matches!(cyclic_bar(&f3, pr(5), 3), Err(Error::PrimeMismatch { .. })));
    }

    #[test]
    fn normalized_matches_unnormalized() {
        let x = mod_p_reduction(&builtin_y2(), pr(2)).unwrap();
        for y in [builtin_y2(), x] {
            let a = CyclicBarComplex::build(&y, pr(2), 6).unwrap();
            let b = CyclicBarComplex::build_unnormalized(&y, pr(2), 6).unwrap();
            b.check_d_squared().unwrap();
            assert!(b.dim(5) > a.dim(5));
            assert_eq!(a.homology_dims(), b.homology_dims());
        }
    }
}
