//! Coefficient rings used by the polynomial and elimination code.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. Always stored reduced with a positive denominator.
pub type Rat = BigRational;

/// Build a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer-valued rational.
pub fn rint(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Minimal ring interface shared by integers, rationals and univariate
/// polynomials over either.
pub trait Coeff: Clone + PartialEq + Debug + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Division that is known to be exact (field division for `Rat`).
    fn div_exact(&self, other: &Self) -> Self;
    /// Rough size measure used for pivot selection.
    fn bits(&self) -> u64;
}

/// Rings with a gcd. For `Rat` this is the rational gcd
/// gcd(a/b, c/d) = gcd(a, c) / lcm(b, d), so that dividing by the content of a
/// rational polynomial leaves a primitive integer polynomial.
pub trait Gcd: Coeff {
    fn gcd_ref(&self, other: &Self) -> Self;
    /// Unit normalization: returns `(normalized, unit)` with `self = unit * normalized`.
    fn normalize_unit(&self) -> (Self, Self);
}

impl Coeff for BigInt {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_zero(), "inexact integer division");
        self / other
    }
    fn bits(&self) -> u64 {
        self.bits()
    }
}

impl Gcd for BigInt {
    fn gcd_ref(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn normalize_unit(&self) -> (Self, Self) {
        if self.is_negative() {
            (-self, -BigInt::one())
        } else {
            (self.clone(), BigInt::one())
        }
    }
}

impl Coeff for Rat {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl Gcd for Rat {
    fn gcd_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let num = Integer::gcd(self.numer(), other.numer());
        let den = Integer::lcm(self.denom(), other.denom());
        Rat::new(num, den)
    }
    fn normalize_unit(&self) -> (Self, Self) {
        if self.is_zero() {
            (Rat::zero(), Rat::one())
        } else {
            (Rat::one(), self.clone())
        }
    }
}

/// Least common multiple of the denominators of a list of rationals.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| Integer::lcm(&acc, v.denom()))
}

/// Gcd of the numerators of a list of rationals that are known to be integers.
pub fn integer_content<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| Integer::gcd(&acc, v))
}

/// Ceiling of a rational as an integer.
pub fn ceil_rat(v: &Rat) -> BigInt {
    v.ceil().to_integer()
}

/// Floor of a rational as an integer.
pub fn floor_rat(v: &Rat) -> BigInt {
    v.floor().to_integer()
}
