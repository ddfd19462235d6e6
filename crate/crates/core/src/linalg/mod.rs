//! Exact linear algebra over F_p, Z and F_p[u].

mod complex;
pub mod field;
mod matrix;
mod ring;
mod snf;

pub use complex::{homology_basis, homology_of_complex, ChainComplex, HomologyBasis, HomologyGroup};
pub use field::{rank, rank_kernel, SparseFpMatrix, SparseRow};
pub use matrix::ExactMatrix;
pub use ring::{inv_mod, FpPoly, Prime, Ring, Scalar};
pub use snf::{smith_normal_form, smith_normal_form_euclidean, SnfResult};
