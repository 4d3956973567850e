//! Tensor and linear complementarity problems: sparse tensor maps, the
//! monomial auxiliary system, exact LCP solving, TCP solving and class checks
//! with certified verdicts.

pub mod auxiliary;
pub mod classes;
pub mod cone;
pub mod config;
pub mod error;
pub mod falsify;
pub mod io;
pub mod lcp;
pub mod linalg;
pub mod monomial;
pub mod numeric;
pub mod report;
pub mod suite;
pub mod tcp;
pub mod tensor;
pub mod verdict;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use monomial::{MonomialBasis, MultiIndex};
pub use numeric::Rational;
pub use tensor::SparseTensor;
