//! Dense univariate polynomials over an exact coefficient ring.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{Coeff, Gcd, Rat};

/// Dense univariate polynomial, coefficients stored from the constant term up.
/// The coefficient vector never has a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<T> {
    coeffs: Vec<T>,
}

/// Univariate polynomial in `n` with rational coefficients.
pub type PolyN = UPoly<Rat>;

impl<T: Coeff> UPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(c: T, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        UPoly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// `x + c`
    pub fn linear(c: T) -> Self {
        Self::new(vec![c, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn div_scalar(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.div_exact(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// Taylor shift `p(x + c)`.
    pub fn shift(&self, c: &T) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let lin = Self::linear(c.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * &lin) + &Self::constant(a.clone()))
    }

    /// Substitute `x -> c * x`.
    pub fn dilate(&self, c: &T) -> Self {
        let mut pow = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul_ref(&pow));
            pow = pow.mul_ref(c);
        }
        Self::new(out)
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> UPoly<U> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Division with remainder; exact coefficient division by the leading
    /// coefficient of `divisor` must be possible (always true over a field).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].div_exact(&lc);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub_ref(&c.mul_ref(b));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient of an exact division, `None` if a remainder is left.
    pub fn try_exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo-division by zero polynomial");
        let lc = divisor.lc();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = rem.lc();
            let t = divisor.scale(&c).shl(dr - dd);
            rem = &rem.scale(&lc) - &t;
        }
        rem
    }
}

impl<T: Gcd> UPoly<T> {
    /// Gcd of the coefficients.
    pub fn content(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc.gcd_ref(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.div_scalar(&self.content())
    }

    /// Normalize so that the leading coefficient is a normalized element of `T`.
    pub fn normalized(&self) -> Self {
        self.normalize_unit().0
    }

    /// Polynomial gcd by the primitive remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let ca = self.content();
        let cb = other.content();
        let c = ca.gcd_ref(&cb);
        let (mut f, mut g) = (self.div_scalar(&ca), other.div_scalar(&cb));
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            if g.degree() == Some(0) {
                return Self::constant(c).normalized();
            }
            let r = f.pseudo_rem(&g);
            if r.is_zero() {
                return g.scale(&c).normalized();
            }
            f = g;
            g = r.primitive_part();
        }
    }
}

impl<T: Coeff> Zero for UPoly<T> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coeff> One for UPoly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Coeff> Add for UPoly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Coeff> Mul for UPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, T: Coeff> Add<&'a UPoly<T>> for &'a UPoly<T> {
    type Output = UPoly<T>;
    fn add(self, rhs: &UPoly<T>) -> UPoly<T> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add_ref(s);
        }
        UPoly::new(out)
    }
}

impl<'a, T: Coeff> Sub<&'a UPoly<T>> for &'a UPoly<T> {
    type Output = UPoly<T>;
    fn sub(self, rhs: &UPoly<T>) -> UPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..len)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg_ref(),
                (None, None) => unreachable!(),
            })
            .collect();
        UPoly::new(out)
    }
}

impl<'a, T: Coeff> Mul<&'a UPoly<T>> for &'a UPoly<T> {
    type Output = UPoly<T>;
    fn mul(self, rhs: &UPoly<T>) -> UPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        UPoly::new(out)
    }
}

impl<T: Coeff> Neg for &UPoly<T> {
    type Output = UPoly<T>;
    fn neg(self) -> UPoly<T> {
        UPoly::new(self.coeffs.iter().map(|c| c.neg_ref()).collect())
    }
}

impl<T: Coeff> Coeff for UPoly<T> {
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
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
    fn bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).sum::<u64>() + self.coeffs.len() as u64
    }
}

impl<T: Gcd> Gcd for UPoly<T> {
    fn gcd_ref(&self, other: &Self) -> Self {
        self.gcd(other)
    }
    fn normalize_unit(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::zero(), Self::one());
        }
        let (_, unit) = self.lc().normalize_unit();
        (self.div_scalar(&unit), Self::constant(unit))
    }
}

impl PolyN {
    /// Integer-coefficient primitive representative `p = scale * prim` with
    /// positive leading coefficient.
    pub fn to_primitive_integer(&self) -> (UPoly<num_bigint::BigInt>, Rat) {
        if self.is_zero() {
            return (UPoly::zero(), Rat::one());
        }
        let content = self.content();
        let content = if self.lc() < Rat::zero() { -content } else { content };
        let prim = self.div_scalar(&content);
        (prim.map(|c| c.to_integer()), content)
    }

    pub fn from_integer_poly(p: &UPoly<num_bigint::BigInt>) -> Self {
        p.map(|c| Rat::from_integer(c.clone()))
    }

    /// Substitute `n -> n + t` for an integer shift.
    pub fn shift_int(&self, t: i64) -> Self {
        self.shift(&Rat::from_integer(t.into()))
    }
}
