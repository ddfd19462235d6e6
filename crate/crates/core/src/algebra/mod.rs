//! Presentations of (bi)graded F_p-algebras built from one-generator pieces.

mod dims;
mod presentation;

pub use dims::{BigradedDims, GradedDims};
pub use presentation::{
    bigraded_dims, binomial_mod_p, divided_power_product, enumerate_basis, poincare_dims, tensor, Generator,
    GeneratorKind, GradedAlgebraPresentation, Monomial,
};
