pub mod ext;
pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;

pub use ext::{companion, ext_roots};
pub use factor::{is_irreducible, poly_factorize, FactorList};
pub use field::{ExtField, Field, PrimeField};
pub use matrix::{FpMatrix, Matrix};
pub use poly::FpPoly;

/// Characteristic polynomial of an F_p matrix as an `FpPoly`.
pub fn matrix_char_poly(m: &FpMatrix) -> FpPoly {
    FpPoly::from_reduced(m.field().p(), m.char_poly())
}

pub fn matrix_min_poly(m: &FpMatrix) -> FpPoly {
    FpPoly::from_reduced(m.field().p(), m.min_poly())
}

pub fn poly_reciprocal(r: &FpPoly) -> crate::Result<FpPoly> {
    r.reciprocal()
}

pub fn is_self_reciprocal(r: &FpPoly) -> crate::Result<bool> {
    r.is_self_reciprocal()
}
