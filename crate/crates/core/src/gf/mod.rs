//! Exact arithmetic in GF(2^m) and in the polynomial ring over it.

mod factor;
mod field;
mod poly;

pub use factor::{
    factor, irreducible_powers, is_irreducible, is_irreducible_power, monic_irreducibles,
    Factorization,
};
pub use field::{gf2_irreducible, Elem, Field, DEFAULT_MODULI, MAX_DEGREE};
pub use poly::Poly;
