//! Dense exact linear algebra over GF(2^m) and over k[λ].

mod matrix;
mod polymatrix;
mod rcf;

pub use matrix::{Echelon, EchelonBasis, Matrix};
pub use polymatrix::{PolyMatrix, SmithForm};
pub use rcf::{companion, eval_at, invariant_factors, rcf, RationalCanonicalForm};
