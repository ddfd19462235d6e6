pub mod algebra;
pub mod dga;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod specseq;
pub mod verify;

pub use error::{Error, Result};
