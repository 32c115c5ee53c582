//! Exact arithmetic: rationals, polynomials in `n` and `k`, rational
//! functions, rising factorials and fraction-free linear algebra.

pub mod elim;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod upoly;

pub use matrix::{nullspace_basis, nullspace_over_ratfunc, nullspace_vector, MatrixQ};
pub use poly::{rising_factorial, Degree, Monomial, PolyNK};
pub use ratfunc::{gcd_nk, RatFuncN, RatFuncNK};
pub use scalar::{rat, rint, Coeff, Gcd, Rat};
pub use upoly::{PolyN, UPoly};

/// `p(n + dn, k + dk)`.
pub fn shift(p: &PolyNK, dn: i64, dk: i64) -> PolyNK {
    p.shift(dn, dk)
}
