//! Bökstedt spectral sequence pages and their `d^{p-1}` patterns.
//!
//! For odd `p` and `d = 2p - 2`:
//! the Y-page is `Γ(στ0) ⊗ Λ(σx) ⊗ Γ(φ^2 x)` with `στ0` at `(1,1)`, `σx` at
//! `(1,d)` and `φ^2 x` at `(2,2d)`; the X_m-page replaces `φ^2 x` by `φ^m x`
//! at `(2,md)`; the dual-Steenrod page is `Λ(σξ_r) ⊗ Γ(στ_s)` with
//! `σξ_r` at `(1, 2(p^r - 1))` and `στ_s` at `(1, 2p^s - 1)`.
//! At `p = 2` the X_m-page is `Λ(σξ1) ⊗ Γ(φ^{2m} ξ1)` with `σξ1` at `(1,1)`
//! and `φ^{2m} ξ1` at `(2,2m)`, and it has no differentials.

use serde::Serialize;

use crate::algebra::{Generator, GeneratorKind, GradedAlgebraPresentation, GradedDims, Monomial};
use crate::error::{Error, Result};
use crate::linalg::Prime;
use crate::specseq::{e_infinity_dims, page_from_presentation, turn_page, BigradedPage, DifferentialSpec, SpecEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "camelCase")]
pub enum BokstedtVariant {
    Y,
    Xm { m: u32 },
    DualSteenrod,
}

impl BokstedtVariant {
    pub fn parse(text: &str) -> Result<Self> {
        let lower = text.to_ascii_lowercase();
        match lower.as_str() {
            "y" => Ok(BokstedtVariant::Y),
            "dual-steenrod" | "dualsteenrod" | "steenrod" => Ok(BokstedtVariant::DualSteenrod),
            _ => match lower.strip_prefix('x').and_then(|m| m.trim_start_matches(['_', '-']).parse::<u32>().ok()) {
                Some(m) if m >= 2 => Ok(BokstedtVariant::Xm { m }),
                _ => Err(Error::Input(format!("unknown page {text:?}; use Y, X<m> (m >= 2) or dual-steenrod"))),
            },
        }
    }
}

impl std::fmt::Display for BokstedtVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BokstedtVariant::Y => write!(f, "Y"),
            BokstedtVariant::Xm { m } => write!(f, "X{m}"),
            BokstedtVariant::DualSteenrod => write!(f, "dual-steenrod"),
        }
    }
}

fn ipow(p: u32, k: u32) -> i64 {
    (p as i64).pow(k)
}

/// The `E^2` presentation. Dual-Steenrod generators are listed while their
/// total degree is at most `bound`.
pub fn bokstedt_presentation(p: Prime, variant: BokstedtVariant, bound: i64) -> Result<GradedAlgebraPresentation> {
    use GeneratorKind::{DividedPower, Exterior};
    let q = p.get();
    let d = 2 * q as i64 - 2;
    let gens = match (variant, q) {
        (BokstedtVariant::Y, 2) => return bokstedt_presentation(p, BokstedtVariant::Xm { m: 2 }, bound),
        (BokstedtVariant::Xm { m }, 2) => vec![
            Generator::new("σξ1", 1, 1, Exterior),
            Generator::new(format!("φ^{}ξ1", 2 * m), 2, 2 * m as i64, DividedPower),
        ],
        (BokstedtVariant::Y, _) => vec![
            Generator::new("στ0", 1, 1, DividedPower),
            Generator::new("σx", 1, d, Exterior),
            Generator::new("φ^2x", 2, 2 * d, DividedPower),
        ],
        (BokstedtVariant::Xm { m }, _) => vec![
            Generator::new("στ0", 1, 1, DividedPower),
            Generator::new("σx", 1, d, Exterior),
            Generator::new(format!("φ^{m}x"), 2, m as i64 * d, DividedPower),
        ],
        (BokstedtVariant::DualSteenrod, _) => {
            let mut g = Vec::new();
            for i in 0u32.. {
                // at p = 2 the dual Steenrod algebra is polynomial on ξ_i with |ξ_i| = 2^i - 1
                let (tau, xi) = if q == 2 {
                    (i64::MAX, ipow(2, i + 1) - 1)
                } else {
                    (2 * ipow(q, i) - 1, 2 * (ipow(q, i + 1) - 1))
                };
                if 1 + tau.min(xi) > bound {
                    break;
                }
                if tau < bound {
                    g.push(Generator::new(format!("στ{i}"), 1, tau, DividedPower));
                }
                if xi < bound {
                    g.push(Generator::new(format!("σξ{}", i + 1), 1, xi, Exterior));
                }
            }
            g
        }
    };
    GradedAlgebraPresentation::new(p, gens)
}

/// `E^2` through total degree `bound`.
pub fn bokstedt_e2(p: Prime, variant: BokstedtVariant, bound: i64) -> Result<BigradedPage> {
    let pres = bokstedt_presentation(p, variant, bound)?;
    let mut page = page_from_presentation(&pres, bound);
    page.provenance = format!("{variant}-page E^2 = {pres}");
    Ok(page)
}

/// `d^{p-1} γ_k(στ_i) = γ_{k-p}(στ_i) · σξ_{i+1}` (dual Steenrod) or
/// `γ_k(στ0) ↦ γ_{k-p}(στ0) · σx` (Y and X_m) for `k >= p`, on pure sources
/// of total degree `<= bound`. All other monomials map to zero.
pub fn bokstedt_pattern(p: Prime, variant: BokstedtVariant, bound: i64) -> Result<DifferentialSpec> {
    let q = p.get();
    if q == 2 {
        return Err(Error::Input(format!("the {variant}-page pattern is defined for odd primes only")));
    }
    let pres = bokstedt_presentation(p, variant, bound)?;
    let gens = pres.generators();
    let find = |name: &str| gens.iter().position(|g| g.name == name);
    let mut pairs = Vec::new();
    match variant {
        BokstedtVariant::DualSteenrod => {
            for i in 0.. {
                let Some(tau) = find(&format!("στ{i}")) else { break };
                if let Some(xi) = find(&format!("σξ{}", i + 1)) {
                    pairs.push((tau, xi));
                }
            }
        }
        _ => pairs.push((find("στ0").expect("στ0"), find("σx").expect("σx"))),
    }
    let n = gens.len();
    let mut entries = Vec::new();
    for (tau, xi) in pairs {
        let t = gens[tau].total();
        for k in q.. {
            if k as i64 * t > bound {
                break;
            }
            let mut source = Monomial::unit(n);
            source.exponents[tau] = k;
            let mut target = Monomial::unit(n);
            target.exponents[tau] = k - q;
            target.exponents[xi] = 1;
            entries.push(SpecEntry { source, target, coeff: 1 });
        }
    }
    Ok(DifferentialSpec { r: q - 1, entries })
}

/// A run of the spectral sequence: `E^2` through `E^∞` and the
/// differentials used.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSequenceRun {
    pub prime: u32,
    pub variant: BokstedtVariant,
    pub bound: i64,
    pub pages: Vec<BigradedPage>,
    pub differentials: Vec<DifferentialSpec>,
    pub e_infinity: GradedDims,
}

/// Builds `E^2` through `bound + 2`, applies `d^2 = ... = d^{p-2} = 0` and
/// the pattern at `r = p - 1`, and reads off `E^∞` through `bound`.
pub fn run_bokstedt(p: Prime, variant: BokstedtVariant, bound: i64) -> Result<SpectralSequenceRun> {
    if bound < 0 {
        return Err(Error::Input("bound must be >= 0".into()));
    }
    let q = p.get();
    let region = bound + 2;
    let mut pages = vec![bokstedt_e2(p, variant, region)?];
    let mut differentials = Vec::new();
    if q > 2 {
        for r in 2..q - 1 {
            differentials.push(DifferentialSpec::zero(r));
        }
        differentials.push(bokstedt_pattern(p, variant, region)?);
        for spec in &differentials {
            let next = turn_page(pages.last().expect("nonempty"), spec)?;
            pages.push(next);
        }
    }
    let e_infinity = e_infinity_dims(&pages, bound)?;
    Ok(SpectralSequenceRun { prime: q, variant, bound, pages, differentials, e_infinity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specseq::possible_differentials;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial { exponents: e.to_vec() }
    }

    #[test]
    fn y_pattern_at_three() {
        let spec = bokstedt_pattern(pr(3), BokstedtVariant::Y, 8).unwrap();
        assert_eq!(spec.r, 2);
        assert_eq!(spec.entries[0], SpecEntry { source: mono(&[3, 0, 0]), target: mono(&[0, 1, 0]), coeff: 1 });
        assert_eq!(spec.entries[1], SpecEntry { source: mono(&[4, 0, 0]), target: mono(&[1, 1, 0]), coeff: 1 });
        assert_eq!(spec.entries.len(), 2);
    }

    #[test]
    fn below_threshold_is_zero() {
        let spec = bokstedt_pattern(pr(5), BokstedtVariant::Y, 8).unwrap();
        assert!(spec.entries.iter().all(|e| e.source.exponents[0] >= 5));
        assert!(spec.entries.is_empty());
    }

    #[test]
    fn odd_prime_only() {
        assert!(bokstedt_pattern(pr(2), BokstedtVariant::Y, 8).is_err());
    }

    #[test]
    fn dual_steenrod_generators() {
        let pres = bokstedt_presentation(pr(3), BokstedtVariant::DualSteenrod, 10).unwrap();
        let gens: Vec<(&str, i64)> = pres.generators().iter().map(|g| (g.name.as_str(), g.t)).collect();
        assert_eq!(gens, vec![("στ0", 1), ("σξ1", 4), ("στ1", 5)]);
    }

    #[test]
    fn dual_steenrod_cancellation() {
        let page = bokstedt_e2(pr(3), BokstedtVariant::DualSteenrod, 10).unwrap();
        let spec = bokstedt_pattern(pr(3), BokstedtVariant::DualSteenrod, 10).unwrap();
        let next = turn_page(&page, &spec).unwrap();
        assert_eq!(page.dim(3, 3), 1);
        assert_eq!(next.dim(3, 3), 0);
        assert_eq!(next.dim(1, 4), 0);
    }

    #[test]
    fn y_page_e_infinity() {
        let run = run_bokstedt(pr(3), BokstedtVariant::Y, 6).unwrap();
        assert_eq!(run.e_infinity.to_vec(0, 6), vec![1, 0, 1, 0, 1, 0, 0]);
        let e3 = &run.pages[1];
        assert_eq!(e3.dim(3, 3), 0);
        assert_eq!(e3.dim(1, 4), 0);
        assert_eq!((e3.dim(1, 1), e3.dim(2, 2)), (1, 1));
    }

    #[test]
    fn xm_page_three_three() {
        let run = run_bokstedt(pr(3), BokstedtVariant::Xm { m: 3 }, 14).unwrap();
        let nonzero: Vec<(i64, usize)> = run.e_infinity.iter().collect();
        assert_eq!(nonzero, vec![(0, 1), (2, 1), (4, 1), (14, 1)]);
        assert_eq!(run.pages.last().unwrap().class_labels(2, 12), vec!["γ1(φ^3x)"]);
    }

    #[test]
    fn xm_page_five_two() {
        let run = run_bokstedt(pr(5), BokstedtVariant::Xm { m: 2 }, 18).unwrap();
        let nonzero: Vec<i64> = run.e_infinity.iter().map(|(n, _)| n).collect();
        assert_eq!(nonzero, vec![0, 2, 4, 6, 8, 18]);
        assert_eq!(run.pages.len(), 4);
    }

    #[test]
    fn degenerate_page_at_two() {
        let run = run_bokstedt(pr(2), BokstedtVariant::Xm { m: 2 }, 6).unwrap();
        assert_eq!(run.e_infinity.to_vec(0, 6), vec![1, 0, 1, 0, 0, 0, 1]);
        assert!(possible_differentials(&run.pages[0], 6).is_empty());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

        #[test]
        fn pattern_cancels_pure_and_sigma_x_classes(
            p in proptest::sample::select(vec![3u32, 5, 7]),
            m in 2u32..5,
            bound in 4i64..30,
        ) {
            let p = pr(p);
            let variant = BokstedtVariant::Xm { m };
            let mut page = bokstedt_e2(p, variant, bound + 1).unwrap();
            for r in 2..p.get() - 1 {
                page = turn_page(&page, &DifferentialSpec::zero(r)).unwrap();
            }
            let spec = bokstedt_pattern(p, variant, bound + 1).unwrap();
            let next = turn_page(&page, &spec).unwrap();
            for (&(s, t), spot) in next.spots() {
                if s + t > bound {
                    continue;
                }
                for (i, mono) in spot.monomials.iter().enumerate() {
                    let e = &mono.exponents;
                    let pure_high = e[0] >= p.get() && e[1] == 0 && e[2] == 0;
                    let times_sigma_x = e[1] == 1 && e[2] == 0;
                    if pure_high || times_sigma_x {
                        proptest::prop_assert!(!spot.survives(i, p.get()), "{} survives", next.label(mono));
                    }
                }
            }
        }
    }

    #[test]
    fn variants_parse() {
        assert_eq!(BokstedtVariant::parse("Y").unwrap(), BokstedtVariant::Y);
        assert_eq!(BokstedtVariant::parse("X3").unwrap(), BokstedtVariant::Xm { m: 3 });
        assert_eq!(BokstedtVariant::parse("x_4").unwrap(), BokstedtVariant::Xm { m: 4 });
        assert_eq!(BokstedtVariant::parse("dual-steenrod").unwrap(), BokstedtVariant::DualSteenrod);
        assert!(BokstedtVariant::parse("X1").is_err());
        assert!(BokstedtVariant::parse("Z").is_err());
    }
}
