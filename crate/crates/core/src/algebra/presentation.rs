use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{BigradedDims, GradedDims};
use crate::error::{Error, Result};
use crate::linalg::Prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Polynomial,
    Exterior,
    DividedPower,
    /// `F_p[x]/(x^m)` with `m >= 2`.
    Truncated(u32),
}

impl GeneratorKind {
    /// Largest allowed exponent, if bounded.
    pub fn max_exponent(self) -> Option<u32> {
        match self {
            GeneratorKind::Exterior => Some(1),
            GeneratorKind::Truncated(m) => Some(m - 1),
            GeneratorKind::Polynomial | GeneratorKind::DividedPower => None,
        }
    }

    fn json_name(self) -> &'static str {
        match self {
            GeneratorKind::Polynomial => "polynomial",
            GeneratorKind::Exterior => "exterior",
            GeneratorKind::DividedPower => "dividedPower",
            GeneratorKind::Truncated(_) => "truncatedPolynomial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GeneratorJson", into = "GeneratorJson")]
pub struct Generator {
    pub name: String,
    /// Homological degree.
    pub s: i64,
    /// Internal degree.
    pub t: i64,
    pub kind: GeneratorKind,
}

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    name: String,
    #[serde(default)]
    s: i64,
    t: i64,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
}

impl TryFrom<GeneratorJson> for Generator {
    type Error = Error;

    fn try_from(g: GeneratorJson) -> Result<Self> {
        let kind = match (g.kind.as_str(), g.m) {
            ("polynomial", None) => GeneratorKind::Polynomial,
            ("exterior", None) => GeneratorKind::Exterior,
            ("dividedPower", None) => GeneratorKind::DividedPower,
            ("truncatedPolynomial", Some(m)) => GeneratorKind::Truncated(m),
            ("truncatedPolynomial", None) => {
                return Err(Error::InvalidPresentation(format!("generator {}: missing m", g.name)))
            }
            (k, _) => return Err(Error::InvalidPresentation(format!("generator {}: bad kind {k:?}", g.name))),
        };
        Ok(Generator { name: g.name, s: g.s, t: g.t, kind })
    }
}

impl From<Generator> for GeneratorJson {
    fn from(g: Generator) -> Self {
        let m = match g.kind {
            GeneratorKind::Truncated(m) => Some(m),
            _ => None,
        };
        GeneratorJson { name: g.name, s: g.s, t: g.t, kind: g.kind.json_name().into(), m }
    }
}

impl Generator {
    pub fn new(name: impl Into<String>, s: i64, t: i64, kind: GeneratorKind) -> Self {
        Generator { name: name.into(), s, t, kind }
    }

    pub fn total(&self) -> i64 {
        self.s + self.t
    }
}

/// A tensor product of one-generator algebras over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson")]
pub struct GradedAlgebraPresentation {
    prime: Prime,
    generators: Vec<Generator>,
}

#[derive(Deserialize)]
struct PresentationJson {
    prime: Prime,
    generators: Vec<Generator>,
}

impl TryFrom<PresentationJson> for GradedAlgebraPresentation {
    type Error = Error;

    fn try_from(p: PresentationJson) -> Result<Self> {
        GradedAlgebraPresentation::new(p.prime, p.generators)
    }
}

impl GradedAlgebraPresentation {
    pub fn new(prime: Prime, generators: Vec<Generator>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::InvalidPresentation(format!("duplicate generator name {}", g.name)));
            }
            if g.s < 0 || g.t < 0 || g.total() == 0 {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} has bidegree ({},{}); need s,t >= 0 and positive total degree",
                    g.name, g.s, g.t
                )));
            }
            if let GeneratorKind::Truncated(m) = g.kind {
                if m < 2 {
                    return Err(Error::InvalidPresentation(format!("generator {}: truncation order {m} < 2", g.name)));
                }
            }
        }
        Ok(GradedAlgebraPresentation { prime, generators })
    }

    pub fn empty(prime: Prime) -> Self {
        GradedAlgebraPresentation { prime, generators: Vec::new() }
    }

    /// One generator, single-graded (`s = 0`).
    pub fn single(prime: Prime, name: &str, degree: i64, kind: GeneratorKind) -> Result<Self> {
        Self::new(prime, vec![Generator::new(name, 0, degree, kind)])
    }

    /// Parses generators written as `kind name degree [m]`, separated by
    /// `,` or `;`. Kinds: `polynomial`, `exterior`, `divided`, `truncated`.
    /// Degrees are internal degrees; an optional `s:t` form sets both.
    pub fn parse(prime: Prime, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for part in text.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()) {
            let words: Vec<&str> = part.split_whitespace().collect();
            let bad = || Error::InvalidPresentation(format!("cannot parse generator {part:?}"));
            if words.len() < 3 {
                return Err(bad());
            }
            let (s, t) = match words[2].split_once(':') {
                Some((s, t)) => (s.parse().map_err(|_| bad())?, t.parse().map_err(|_| bad())?),
                None => (0, words[2].parse().map_err(|_| bad())?),
            };
            let kind = match (words[0], words.get(3)) {
                ("polynomial" | "poly", None) => GeneratorKind::Polynomial,
                ("exterior" | "ext", None) => GeneratorKind::Exterior,
                ("divided" | "dividedPower", None) => GeneratorKind::DividedPower,
                ("truncated" | "truncatedPolynomial", Some(m)) => {
                    GeneratorKind::Truncated(m.parse().map_err(|_| bad())?)
                }
                _ => return Err(bad()),
            };
            gens.push(Generator::new(words[1], s, t, kind));
        }
        Self::new(prime, gens)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn label(&self, m: &Monomial) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .zip(&m.exponents)
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| match (g.kind, e) {
                (GeneratorKind::DividedPower, k) => format!("γ{k}({})", g.name),
                (_, 1) => g.name.clone(),
                (_, k) => format!("{}^{k}", g.name),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    pub fn bidegree(&self, m: &Monomial) -> (i64, i64) {
        self.generators
            .iter()
            .zip(&m.exponents)
            .fold((0, 0), |(s, t), (g, &e)| (s + g.s * e as i64, t + g.t * e as i64))
    }

    pub fn total_degree(&self, m: &Monomial) -> i64 {
        let (s, t) = self.bidegree(m);
        s + t
    }
}

impl fmt::Display for GradedAlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "F_{}", self.prime);
        }
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let deg = if g.s == 0 { g.t.to_string() } else { format!("{},{}", g.s, g.t) };
                match g.kind {
                    GeneratorKind::Polynomial => format!("P({}|{deg})", g.name),
                    GeneratorKind::Exterior => format!("Λ({}|{deg})", g.name),
                    GeneratorKind::DividedPower => format!("Γ({}|{deg})", g.name),
                    GeneratorKind::Truncated(m) => format!("P({}|{deg})/({}^{m})", g.name, g.name),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

/// Exponent vector over the generators of a presentation. For divided-power
/// generators the exponent `k` stands for `γ_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial { exponents: vec![0; n] }
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

/// All monomials of total degree `<= bound`, with bidegrees, ordered by total
/// degree, then bidegree, then exponent vector.
pub fn enumerate_basis(p: &GradedAlgebraPresentation, bound: i64) -> Vec<(Monomial, (i64, i64))> {
    let mut out = Vec::new();
    if bound < 0 {
        return out;
    }
    let gens = p.generators();
    let mut exps = vec![0u32; gens.len()];
    fn rec(
        gens: &[Generator],
        i: usize,
        exps: &mut Vec<u32>,
        (s, t): (i64, i64),
        bound: i64,
        out: &mut Vec<(Monomial, (i64, i64))>,
    ) {
        if i == gens.len() {
            out.push((Monomial { exponents: exps.clone() }, (s, t)));
            return;
        }
        let g = &gens[i];
        let mut e = 0u32;
        loop {
            let (ss, tt) = (s + g.s * e as i64, t + g.t * e as i64);
            if ss + tt > bound || g.kind.max_exponent().is_some_and(|m| e > m) {
                break;
            }
            exps[i] = e;
            rec(gens, i + 1, exps, (ss, tt), bound, out);
            e += 1;
        }
        exps[i] = 0;
    }
    rec(gens, 0, &mut exps, (0, 0), bound, &mut out);
    out.sort_by(|(ma, (sa, ta)), (mb, (sb, tb))| (sa + ta, *sa, ma).cmp(&(sb + tb, *sb, mb)));
    out
}

/// `binomial(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p64, k % p64);
        if ki > ni {
            return 0;
        }
        let mut c = 1u64;
        for j in 0..ki {
            c = c * ((ni - j) % p64) % p64;
            c = c * crate::linalg::inv_mod(((j + 1) % p64) as u32, p) as u64 % p64;
        }
        acc = acc * c % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

/// `γ_i γ_j = binomial(i+j, i) γ_{i+j}`; returns the coefficient mod p.
pub fn divided_power_product(i: u32, j: u32, p: Prime) -> u32 {
    binomial_mod_p((i + j) as u64, i as u64, p.get())
}

/// Concatenates generator lists.
pub fn tensor(a: &GradedAlgebraPresentation, b: &GradedAlgebraPresentation) -> Result<GradedAlgebraPresentation> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch { left: a.prime.get(), right: b.prime.get() });
    }
    let gens = a.generators.iter().chain(&b.generators).cloned().collect();
    GradedAlgebraPresentation::new(a.prime, gens)
}

pub fn poincare_dims(p: &GradedAlgebraPresentation, bound: i64) -> GradedDims {
    let mut g = GradedDims::new();
    for (_, (s, t)) in enumerate_basis(p, bound) {
        g.add(s + t, 1);
    }
    g
}

pub fn bigraded_dims(p: &GradedAlgebraPresentation, bound: i64) -> BigradedDims {
    let mut g = BigradedDims::new();
    for (_, (s, t)) in enumerate_basis(p, bound) {
        g.add(s, t, 1);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorKind::*;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn labels(p: &GradedAlgebraPresentation, bound: i64) -> Vec<String> {
        enumerate_basis(p, bound).iter().map(|(m, _)| p.label(m)).collect()
    }

    #[test]
    fn degenerate_p2_page_basis() {
        let p = GradedAlgebraPresentation::new(
            pr(2),
            vec![Generator::new("σξ1", 1, 1, Exterior), Generator::new("φ4ξ1", 2, 4, DividedPower)],
        )
        .unwrap();
        assert_eq!(labels(&p, 6), vec!["1", "σξ1", "γ1(φ4ξ1)"]);
    }

    #[test]
    fn empty_presentation() {
        let p = GradedAlgebraPresentation::empty(pr(5));
        assert_eq!(labels(&p, 10), vec!["1"]);
        assert_eq!(poincare_dims(&p, 3).to_vec(0, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn divided_powers_of_sigma_tau() {
        let p = GradedAlgebraPresentation::new(pr(3), vec![Generator::new("στ0", 1, 1, DividedPower)]).unwrap();
        assert_eq!(labels(&p, 5), vec!["1", "γ1(στ0)", "γ2(στ0)"]);
    }

    #[test]
    fn divided_power_products() {
        assert_eq!(divided_power_product(1, 1, pr(2)), 0);
        for k in 0..7 {
            assert_eq!(divided_power_product(0, k, pr(5)), 1);
        }
        assert_eq!(divided_power_product(1, 2, pr(3)), 0);
        assert_eq!(divided_power_product(1, 1, pr(3)), 2);
    }

    #[test]
    fn tensor_examples() {
        let lam = GradedAlgebraPresentation::new(pr(3), vec![Generator::new("σx", 1, 2, Exterior)]).unwrap();
        let gam = GradedAlgebraPresentation::new(pr(3), vec![Generator::new("φ2x", 2, 4, DividedPower)]).unwrap();
        let t = tensor(&lam, &gam).unwrap();
        assert_eq!(poincare_dims(&t, 6).to_vec(0, 6), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(tensor(&lam, &GradedAlgebraPresentation::empty(pr(3))).unwrap(), lam);
        let tau = GradedAlgebraPresentation::new(pr(3), vec![Generator::new("στ0", 1, 1, DividedPower)]).unwrap();
        let sx = GradedAlgebraPresentation::new(pr(3), vec![Generator::new("σx", 1, 4, Exterior)]).unwrap();
        assert_eq!(poincare_dims(&tensor(&tau, &sx).unwrap(), 6).to_vec(0, 6), vec![1, 0, 1, 0, 1, 1, 1]);
        assert!(matches!(tensor(&lam, &GradedAlgebraPresentation::empty(pr(2))), Err(Error::PrimeMismatch { .. })));
    }

    #[test]
    fn poincare_examples() {
        let p = GradedAlgebraPresentation::new(
            pr(2),
            vec![Generator::new("y", 0, 2, DividedPower), Generator::new("z", 0, 3, Exterior)],
        )
        .unwrap();
        assert_eq!(poincare_dims(&p, 7).to_vec(0, 7), vec![1, 0, 1, 1, 1, 1, 1, 1]);
        let mu = GradedAlgebraPresentation::single(pr(3), "μ", 2, Truncated(3)).unwrap();
        assert_eq!(poincare_dims(&mu, 6).to_vec(0, 6), vec![1, 0, 1, 0, 1, 0, 0]);
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let text = r#"{"prime":3,"generators":[{"name":"x","s":0,"t":2,"kind":"truncatedPolynomial","m":3},{"name":"y","t":3,"kind":"exterior"}]}"#;
        let p: GradedAlgebraPresentation = serde_json::from_str(text).unwrap();
        assert_eq!(p.generators()[0].kind, Truncated(3));
        let back: GradedAlgebraPresentation = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        let dup =
            r#"{"prime":3,"generators":[{"name":"x","t":2,"kind":"exterior"},{"name":"x","t":2,"kind":"exterior"}]}"#;
        assert!(serde_json::from_str::<GradedAlgebraPresentation>(dup).is_err());
        let bad_m = r#"{"prime":3,"generators":[{"name":"x","t":2,"kind":"truncatedPolynomial","m":1}]}"#;
        assert!(serde_json::from_str::<GradedAlgebraPresentation>(bad_m).is_err());
        assert!(serde_json::from_str::<GradedAlgebraPresentation>(r#"{"prime":4,"generators":[]}"#).is_err());
    }

    #[test]
    fn parse_text() {
        let p = GradedAlgebraPresentation::parse(pr(3), "exterior x 2; truncated z 4 3, divided g 1:1").unwrap();
        assert_eq!(p.generators().len(), 3);
        assert_eq!(p.generators()[1].kind, Truncated(3));
        assert_eq!((p.generators()[2].s, p.generators()[2].t), (1, 1));
        assert!(GradedAlgebraPresentation::parse(pr(3), "truncated z 4").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn kind() -> impl Strategy<Value = GeneratorKind> {
            prop_oneof![Just(Polynomial), Just(Exterior), Just(DividedPower), (2u32..5).prop_map(Truncated)]
        }

        fn presentation(prefix: &'static str) -> impl Strategy<Value = GradedAlgebraPresentation> {
            proptest::collection::vec((0i64..3, 1i64..5, kind()), 0..3).prop_map(move |gs| {
                let gens = gs
                    .into_iter()
                    .enumerate()
                    .map(|(i, (s, t, k))| Generator::new(format!("{prefix}{i}"), s, t, k))
                    .collect();
                GradedAlgebraPresentation::new(Prime::new(3).unwrap(), gens).unwrap()
            })
        }

        proptest! {
            #[test]
            fn tensor_dims_convolve(a in presentation("a"), b in presentation("b"), bound in 0i64..14) {
                let t = tensor(&a, &b).unwrap();
                let conv = poincare_dims(&a, bound).convolve(&poincare_dims(&b, bound), bound);
                prop_assert_eq!(poincare_dims(&t, bound), conv);
            }

            #[test]
            fn divided_and_polynomial_enumerate_alike(s in 0i64..3, t in 1i64..5, bound in 0i64..20) {
                let p = Prime::new(5).unwrap();
                let a = GradedAlgebraPresentation::new(p, vec![Generator::new("x", s, t, Polynomial)]).unwrap();
                let b = GradedAlgebraPresentation::new(p, vec![Generator::new("x", s, t, DividedPower)]).unwrap();
                prop_assert_eq!(bigraded_dims(&a, bound), bigraded_dims(&b, bound));
            }

            #[test]
            fn divided_power_product_comm_assoc(i in 0u32..12, j in 0u32..12, k in 0u32..12, pi in 0usize..3) {
                let p = Prime::new([2, 3, 5][pi]).unwrap();
                prop_assert_eq!(divided_power_product(i, j, p), divided_power_product(j, i, p));
                let pm = p.get() as u64;
                let left = divided_power_product(i, j, p) as u64 * divided_power_product(i + j, k, p) as u64 % pm;
                let right = divided_power_product(j, k, p) as u64 * divided_power_product(i, j + k, p) as u64 % pm;
                prop_assert_eq!(left, right);
            }

            #[test]
            fn basis_is_exact_and_unique(a in presentation("a"), bound in 0i64..12) {
                let basis = enumerate_basis(&a, bound);
                let set: std::collections::HashSet<_> = basis.iter().map(|(m, _)| m.clone()).collect();
                prop_assert_eq!(set.len(), basis.len());
                for (m, (s, t)) in &basis {
                    prop_assert!(s + t <= bound);
                    prop_assert_eq!(a.bidegree(m), (*s, *t));
                }
            }
        }
    }
}
