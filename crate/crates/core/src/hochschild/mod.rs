//! Hochschild homology `HH(X; F_p)` of connective DGAs over Z or F_p.

mod bar;
mod closed_form;

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{BigradedDims, GradedDims};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::linalg::Prime;

pub use bar::{cyclic_bar, CyclicBarComplex};
pub use closed_form::{closed_form_presentation, hh_graded_closed_form};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum HhSource {
    BarComplex,
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Grading {
    Homological,
    Cohomological,
}

/// HH dimensions by total degree, with the bidegree split for closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HochschildDims {
    pub source: HhSource,
    pub grading: Grading,
    pub dims: GradedDims,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bigraded: Option<BigradedDims>,
    /// Highest degree that was computed.
    pub computed_through: i64,
    /// Highest degree where the value is exact for the algebra the input models.
    pub guaranteed_through: i64,
}

/// One output row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhRecord {
    pub input: String,
    pub prime: u32,
    pub degree: i64,
    pub dimension: usize,
    pub guaranteed: bool,
}

impl HochschildDims {
    pub fn get(&self, n: i64) -> usize {
        self.dims.get(n)
    }

    /// Dimensions for degrees `0..=computed_through`.
    pub fn to_vec(&self) -> Vec<usize> {
        self.dims.to_vec(0, self.computed_through)
    }

    pub fn is_guaranteed(&self, n: i64) -> bool {
        (0..=self.guaranteed_through).contains(&n)
    }

    pub fn records(&self, input: &str, prime: Prime) -> Vec<HhRecord> {
        (0..=self.computed_through)
            .map(|n| HhRecord {
                input: input.to_string(),
                prime: prime.get(),
                degree: n,
                dimension: self.get(n),
                guaranteed: self.is_guaranteed(n),
            })
            .collect()
    }

    /// Aligned text table; unguaranteed rows are marked with `*`.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let head = match self.grading {
            Grading::Homological => "HH_n",
            Grading::Cohomological => "HH^n",
        };
        let _ = writeln!(s, "{:>6}  {:>6}", "n", head);
        for n in 0..=self.computed_through {
            let mark = if self.is_guaranteed(n) { "" } else { " *" };
            let _ = writeln!(s, "{n:>6}  {:>6}{mark}", self.get(n));
        }
        if self.guaranteed_through < self.computed_through {
            let _ = writeln!(s, "* above degree {}: depends on the finite model", self.guaranteed_through);
        }
        s
    }
}

/// `dim HH_n(X; F_p)` for `0 <= n <= bound - 1`, from the normalized cyclic
/// bar complex built through degree `bound`.
pub fn hh_dims(x: &Dga, p: Prime, bound: i64) -> Result<HochschildDims> {
    if bound < 1 {
        return Err(Error::Input("hh_dims needs a bound of at least 1".into()));
    }
    let cb = cyclic_bar(x, p, bound)?;
    let dims = GradedDims::from_slice(&cb.homology_dims());
    let top = bound - 1;
    let guaranteed_through = match x.exact_below() {
        Some(e) => top.min(e - 1),
        None => top,
    };
    Ok(HochschildDims {
        source: HhSource::BarComplex,
        grading: Grading::Homological,
        dims,
        bigraded: None,
        computed_through: top,
        guaranteed_through,
    })
}

/// `HH^n(X; F_p) = Hom_{F_p}(HH_n(X; F_p), F_p)`: same dimensions, cohomological indexing.
pub fn hh_cohomology_dims(h: &HochschildDims) -> HochschildDims {
    HochschildDims { grading: Grading::Cohomological, ..h.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GeneratorKind, GradedAlgebraPresentation};
    use crate::dga::{builtin_formal_polynomial, builtin_y2, from_presentation, tensor_dga};
    use crate::linalg::Ring;
    use proptest::prelude::*;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn y2_at_two() {
        let h = hh_dims(&builtin_y2(), pr(2), 7).unwrap();
        assert_eq!(h.to_vec(), vec![1, 0, 1, 0, 0, 0, 1]);
        assert!(h.is_guaranteed(6));
    }

    #[test]
    fn formal_polynomial_at_two() {
        let x = builtin_formal_polynomial(pr(2), 9).unwrap();
        let h = hh_dims(&x, pr(2), 8).unwrap();
        assert_eq!(h.to_vec(), vec![1, 0, 1, 1, 1, 1, 1, 1]);
        assert_eq!(h.guaranteed_through, 7);
    }

    #[test]
    fn formal_polynomial_at_three() {
        // Γ(σe) ⊗ Λ(σx) with |σe| = 2, |σx| = 5
        let x = builtin_formal_polynomial(pr(3), 10).unwrap();
        let h = hh_dims(&x, pr(3), 10).unwrap();
        assert_eq!(h.to_vec(), vec![1, 0, 1, 0, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn unit_dga() {
        let h = hh_dims(&Dga::unit_dga(Ring::Integers), pr(5), 4).unwrap();
        assert_eq!(h.to_vec(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn exterior_at_three_matches_closed_form() {
        let pres = GradedAlgebraPresentation::single(pr(3), "x", 2, GeneratorKind::Exterior).unwrap();
        let x = from_presentation(&pres, 6).unwrap();
        let h = hh_dims(&x, pr(3), 7).unwrap();
        let c = hh_graded_closed_form(&pres, 6).unwrap();
        assert_eq!(h.dims, c.dims);
    }

    #[test]
    fn guaranteed_range_follows_model() {
        let pres = GradedAlgebraPresentation::single(pr(2), "x", 1, GeneratorKind::Polynomial).unwrap();
        let x = from_presentation(&pres, 3).unwrap();
        let h = hh_dims(&x, pr(2), 8).unwrap();
        assert_eq!(h.guaranteed_through, 3);
        let recs = h.records("x", pr(2));
        assert_eq!(recs.len(), 8);
        assert!(recs[3].guaranteed && !recs[4].guaranteed);
        assert!(h.table().contains('*'));
    }

    #[test]
    fn cohomology_reindexes() {
        let h = hh_dims(&builtin_y2(), pr(2), 4).unwrap();
        let c = hh_cohomology_dims(&h);
        assert_eq!(c.dims, h.dims);
        assert_eq!(c.grading, Grading::Cohomological);
        assert!(c.table().contains("HH^n"));
    }

    #[test]
    fn kunneth_for_y2_squared() {
        let y = builtin_y2();
        let yy = tensor_dga(&y, &y).unwrap();
        let a = hh_dims(&y, pr(2), 9).unwrap();
        let b = hh_dims(&yy, pr(2), 9).unwrap();
        assert_eq!(b.dims, a.dims.convolve(&a.dims, 8));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn truncations_agree_below_their_order(p in prop::sample::select(vec![2u32, 3, 5]), m in 2u32..5, extra in 1u32..3) {
            let p = pr(p);
            let d = if p.get() == 2 { 1 } else { 2 };
            let small = GradedAlgebraPresentation::single(p, "x", d, GeneratorKind::Truncated(m)).unwrap();
            let big = GradedAlgebraPresentation::single(p, "x", d, GeneratorKind::Truncated(m + extra)).unwrap();
            let bound = 10;
            let a = hh_dims(&from_presentation(&small, bound).unwrap(), p, bound).unwrap();
            let b = hh_dims(&from_presentation(&big, bound).unwrap(), p, bound).unwrap();
            let n = m as i64 * d;
            prop_assert_eq!(a.dims.truncated(n - 1), b.dims.truncated(n - 1));
        }
    }
}
