//! Hochschild homology of graded algebras given by presentations, with
//! coefficients in F_p through the augmentation.
//!
//! Per generator of degree `d`:
//! `F_p[x]` gives `Λ(σx)` at `(1, d)`, an odd exterior `Λ(y)` at odd `p`
//! gives `Γ(σy)` at `(1, d)`, and `F_p[z]/(z^m)` gives `Λ(σz) ⊗ Γ(φ^m z)`
//! with `φ^m z` at `(2, md)`. At `p = 2` (and for even exterior generators at
//! odd `p`) `Λ(z)` is read as `F_p[z]/(z^2)`.

use crate::algebra::{bigraded_dims, Generator, GeneratorKind, GradedAlgebraPresentation};
use crate::error::{Error, Result};

/// Presentation of `HH(P; F_p)` as a bigraded algebra.
pub fn closed_form_presentation(pres: &GradedAlgebraPresentation) -> Result<GradedAlgebraPresentation> {
    let p = pres.prime().get();
    let mut out = Vec::new();
    for g in pres.generators() {
        let d = g.total();
        let even = d % 2 == 0;
        let kind = match g.kind {
            GeneratorKind::Exterior if p == 2 || even => GeneratorKind::Truncated(2),
            GeneratorKind::DividedPower => {
                return Err(Error::InvalidPresentation(format!(
                    "divided-power generator {} has no closed form here",
                    g.name
                )))
            }
            k => k,
        };
        if p != 2 && !even && kind != GeneratorKind::Exterior {
            return Err(Error::Parity(format!("{} has odd degree {d} but is not exterior (p = {p})", g.name)));
        }
        let sigma = format!("σ{}", g.name);
        match kind {
            GeneratorKind::Polynomial => out.push(Generator::new(sigma, 1, d, GeneratorKind::Exterior)),
            GeneratorKind::Exterior => out.push(Generator::new(sigma, 1, d, GeneratorKind::DividedPower)),
            GeneratorKind::Truncated(m) => {
                out.push(Generator::new(sigma, 1, d, GeneratorKind::Exterior));
                out.push(Generator::new(format!("φ^{m}{}", g.name), 2, m as i64 * d, GeneratorKind::DividedPower));
            }
            GeneratorKind::DividedPower => unreachable!(),
        }
    }
    GradedAlgebraPresentation::new(pres.prime(), out)
}

/// Closed-form HH dimensions through total degree `bound`.
pub fn hh_graded_closed_form(pres: &GradedAlgebraPresentation, bound: i64) -> Result<super::HochschildDims> {
    let out = closed_form_presentation(pres)?;
    let bigraded = bigraded_dims(&out, bound);
    Ok(super::HochschildDims {
        source: super::HhSource::ClosedForm,
        grading: super::Grading::Homological,
        dims: bigraded.total(),
        bigraded: Some(bigraded),
        computed_through: bound,
        guaranteed_through: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Prime;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn polynomial_at_odd_prime() {
        let pres = GradedAlgebraPresentation::parse(pr(3), "poly x 4").unwrap();
        let h = hh_graded_closed_form(&pres, 12).unwrap();
        assert_eq!(h.dims.iter().collect::<Vec<_>>(), vec![(0, 1), (5, 1)]);
    }

    #[test]
    fn truncated_at_two() {
        let pres = GradedAlgebraPresentation::parse(pr(2), "truncated xi1 1 4").unwrap();
        let out = closed_form_presentation(&pres).unwrap();
        let degs: Vec<(i64, i64)> = out.generators().iter().map(|g| (g.s, g.t)).collect();
        assert_eq!(degs, vec![(1, 1), (2, 4)]);
        let h = hh_graded_closed_form(&pres, 6).unwrap();
        assert_eq!(h.dims.to_vec(0, 6), vec![1, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn y_page_presentation() {
        let pres = GradedAlgebraPresentation::parse(pr(3), "ext t0 1, ext x 4").unwrap();
        let out = closed_form_presentation(&pres).unwrap();
        assert_eq!(out.to_string(), "Γ(σt0|1,1) ⊗ Λ(σx|1,4) ⊗ Γ(φ^2x|2,8)");
    }

    #[test]
    fn parity_and_divided_powers() {
        let odd_poly = GradedAlgebraPresentation::parse(pr(3), "poly x 3").unwrap();
        assert!(matches!(closed_form_presentation(&odd_poly), Err(Error::Parity(_))));
        let ok_at_two = GradedAlgebraPresentation::parse(pr(2), "poly x 3").unwrap();
        assert!(closed_form_presentation(&ok_at_two).is_ok());
        let gamma = GradedAlgebraPresentation::parse(pr(3), "divided g 2").unwrap();
        assert!(matches!(closed_form_presentation(&gamma), Err(Error::InvalidPresentation(_))));
    }
}
