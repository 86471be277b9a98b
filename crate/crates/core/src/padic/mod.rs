pub mod forms;
pub mod matrix;
pub mod scalar;
pub mod smith;

pub use forms::{det_square_class, diagonalize, hasse_invariant, hilbert_symbol, square_class};
pub use matrix::PadicMatrix;
pub use scalar::{legendre, PadicScalar, DEFAULT_PRECISION};
pub use smith::{padic_inverse, smith_invariants, SmithResult};

pub fn padic_of_rational(num: i64, den: i64, p: u64, n: u32) -> crate::Result<PadicScalar> {
    crate::finite::field::check_odd_prime(p)?;
    PadicScalar::from_rational(&num.into(), &den.into(), p, n)
}
