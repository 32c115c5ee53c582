//! Rational functions in `n, k` and in `n` alone, kept in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::PolyNK;
use super::scalar::{denominator_lcm, Coeff, Rat};
use super::upoly::{PolyN, UPoly};

type IntNK = UPoly<UPoly<BigInt>>;

/// Integer polynomial in `k` over `Z[n]` with the same roots.
fn to_integer_nk(p: &PolyNK) -> IntNK {
    let den = Rat::from_integer(denominator_lcm(p.terms().map(|(_, c)| c)));
    p.to_poly_in_k().map(|c| c.map(|v| (v * &den).to_integer()))
}

fn from_integer_nk(p: &IntNK) -> PolyNK {
    PolyNK::from_poly_in_k(&p.map(PolyN::from_integer_poly))
}

/// Gcd of two bivariate polynomials, normalized to a primitive integer
/// polynomial with positive graded-lex leading coefficient.
pub fn gcd_nk(a: &PolyNK, b: &PolyNK) -> PolyNK {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let pa = to_integer_nk(a);
    let pb = to_integer_nk(b);
    // integer content is dropped by the final `primitive`, so only the
    // n-content matters; the cheap coprimality test runs first
    let coprime_in_k = pa.degree() == Some(0) || pb.degree() == Some(0) || coprime_by_specialization(&pa, &pb);
    if coprime_in_k {
        let g = n_content(&pb);
        let g = if g.degree() == Some(0) { g } else { n_content_with(&pa, g) };
        return from_integer_nk(&UPoly::constant(g)).primitive();
    }
    let ca = n_content(&pa);
    let cb = n_content(&pb);
    let cg = ca.gcd(&cb);
    let g = pa.div_scalar(&ca).gcd(&pb.div_scalar(&cb)).scale(&cg);
    from_integer_nk(&g).primitive()
}

/// Gcd over `Z[n]` of the coefficients, up to an integer factor.
fn n_content(p: &IntNK) -> UPoly<BigInt> {
    n_content_with(p, UPoly::zero())
}

fn n_content_with(p: &IntNK, start: UPoly<BigInt>) -> UPoly<BigInt> {
    let mut coeffs: Vec<&UPoly<BigInt>> = p.coeffs().iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.degree());
    let mut acc = start;
    for c in coeffs {
        if acc.degree() == Some(0) {
            return UPoly::constant(BigInt::one());
        }
        acc = acc.gcd(c);
    }
    acc
}

/// Sound test for coprimality of two primitive polynomials in `k` over `Z[n]`:
/// if the gcd of a specialization at a point where both leading coefficients
/// survive is constant, the `k`-degree of the true gcd is zero.
fn coprime_by_specialization(a: &IntNK, b: &IntNK) -> bool {
    let la = a.lc();
    let lb = b.lc();
    for t in 0..16i64 {
        let n0 = BigInt::from(if t % 2 == 0 { t / 2 } else { -(t + 1) / 2 } + 7);
        if la.eval(&n0).is_zero() || lb.eval(&n0).is_zero() {
            continue;
        }
        let sa = a.map(|c| c.eval(&n0));
        let sb = b.map(|c| c.eval(&n0));
        return sa.gcd(&sb).degree() == Some(0);
    }
    false
}

/// Rational function in `n, k`: `num / den` with `gcd(num, den) = 1` and the
/// graded-lex leading coefficient of `den` equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncNK {
    num: PolyNK,
    den: PolyNK,
}

impl RatFuncNK {
    /// Build and normalize. Panics if `den` is zero.
    pub fn new(num: PolyNK, den: PolyNK) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd_nk(&num, &den);
        let (num, den) = if g.total_degree().finite() == Some(0) {
            (num, den)
        } else {
            (
                num.try_exact_div(&g).expect("gcd divides numerator"),
                den.try_exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_term().map(|(_, c)| c.clone()).unwrap();
        let inv = lc.recip();
        RatFuncNK {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Build without the gcd step; only the denominator is made monic.
    pub fn new_unreduced(num: PolyNK, den: PolyNK) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let inv = den.leading_term().map(|(_, c)| c.clone()).unwrap().recip();
        RatFuncNK {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// `num / prod(factors)` in lowest terms. Each factor is reduced against
    /// the numerator on its own, so a product of many small factors never
    /// enters a gcd computation.
    pub fn from_factored(mut num: PolyNK, factors: &[PolyNK]) -> Self {
        let mut den = PolyNK::one();
        for f in factors {
            let mut f = f.clone();
            if !num.is_zero() && f.total_degree().finite().unwrap_or(0) > 0 {
                if f.total_degree().finite() == Some(1) {
                    // linear: a single trial division decides it
                    if let Some(q) = num.try_exact_div(&f) {
                        num = q;
                        f = PolyNK::one();
                    }
                } else {
                    loop {
                        let g = gcd_nk(&num, &f);
                        if g.total_degree().finite() == Some(0) {
                            break;
                        }
                        num = num.try_exact_div(&g).expect("gcd divides numerator");
                        f = f.try_exact_div(&g).expect("gcd divides factor");
                    }
                }
            }
            den = &den * &f;
        }
        Self::new_unreduced(num, den)
    }

    pub fn from_poly(p: PolyNK) -> Self {
        RatFuncNK {
            num: p,
            den: PolyNK::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(PolyNK::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(PolyNK::one())
    }

    pub fn num(&self) -> &PolyNK {
        &self.num
    }

    pub fn den(&self) -> &PolyNK {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn shift(&self, dn: i64, dk: i64) -> Self {
        // shifting preserves coprimality and the leading coefficient
        RatFuncNK {
            num: self.num.shift(dn, dk),
            den: self.den.shift(dn, dk),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new_unreduced(self.den.clone(), self.num.clone())
    }

    /// Value at a point, `None` if the denominator vanishes there.
    pub fn eval(&self, n: &Rat, k: &Rat) -> Option<Rat> {
        let d = self.den.eval(n, k);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(n, k) / d)
        }
    }

    /// Equality decided by cross multiplication, independent of normalization.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RatFuncNK {
    type Output = RatFuncNK;
    fn add(self, rhs: &RatFuncNK) -> RatFuncNK {
        if self.den == rhs.den {
            return RatFuncNK::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFuncNK::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFuncNK {
    type Output = RatFuncNK;
    fn sub(self, rhs: &RatFuncNK) -> RatFuncNK {
        self + &(-rhs)
    }
}

impl Neg for &RatFuncNK {
    type Output = RatFuncNK;
    fn neg(self) -> RatFuncNK {
        RatFuncNK {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFuncNK {
    type Output = RatFuncNK;
    fn mul(self, rhs: &RatFuncNK) -> RatFuncNK {
        RatFuncNK::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFuncNK {
    type Output = RatFuncNK;
    fn div(self, rhs: &RatFuncNK) -> RatFuncNK {
        assert!(!rhs.is_zero(), "division by zero");
        RatFuncNK::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

/// Rational function in `n` alone with monic denominator, in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncN {
    num: PolyN,
    den: PolyN,
}

impl RatFuncN {
    pub fn new(num: PolyN, den: PolyN) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return <Self as Zero>::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let inv = den.lc().recip();
        RatFuncN {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: PolyN) -> Self {
        RatFuncN {
            num: p,
            den: PolyN::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(PolyN::constant(c))
    }

    pub fn num(&self) -> &PolyN {
        &self.num
    }

    pub fn den(&self) -> &PolyN {
        &self.den
    }

    pub fn shift(&self, t: i64) -> Self {
        RatFuncN {
            num: self.num.shift_int(t),
            den: self.den.shift_int(t),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "reciprocal of zero");
        let inv = self.num.lc().recip();
        RatFuncN {
            num: self.den.scale(&inv),
            den: self.num.scale(&inv),
        }
    }

    pub fn eval(&self, n: &Rat) -> Option<Rat> {
        let d = self.den.eval(n);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(n) / d)
        }
    }
}

impl Zero for RatFuncN {
    fn zero() -> Self {
        RatFuncN {
            num: PolyN::zero(),
            den: PolyN::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFuncN {
    fn one() -> Self {
        Self::from_poly(PolyN::one())
    }
}

impl Add for RatFuncN {
    type Output = RatFuncN;
    fn add(self, rhs: RatFuncN) -> RatFuncN {
        self.add_ref(&rhs)
    }
}

impl Mul for RatFuncN {
    type Output = RatFuncN;
    fn mul(self, rhs: RatFuncN) -> RatFuncN {
        self.mul_ref(&rhs)
    }
}

impl Coeff for RatFuncN {
    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFuncN::new(&self.num + &other.num, self.den.clone());
        }
        RatFuncN::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return <Self as Zero>::zero();
        }
        RatFuncN::new(&self.num * &other.num, &self.den * &other.den)
    }
    fn neg_ref(&self) -> Self {
        RatFuncN {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn div_exact(&self, other: &Self) -> Self {
        self.mul_ref(&other.recip())
    }
    fn bits(&self) -> u64 {
        self.num.bits() + self.den.bits()
    }
}

impl fmt::Display for RatFuncN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::scalar::rint;

    fn n() -> PolyNK {
        PolyNK::n()
    }
    fn k() -> PolyNK {
        PolyNK::k()
    }
    fn c(v: i64) -> PolyNK {
        PolyNK::from_int(v)
    }

    #[test]
    fn gcd_finds_common_linear_factor() {
        let f = &(&n() + &k().scale(&rint(2))) + &c(1);
        let a = &f * &(&n() - &k());
        let b = &f * &(&(&n() * &k()) + &c(3));
        assert_eq!(gcd_nk(&a, &b), f);
        let b2 = &(&n() * &k()) + &c(3);
        assert!(gcd_nk(&a, &b2).is_one());
    }

    #[test]
    fn gcd_with_content_in_n() {
        let a = &(&n() + &c(1)) * &(&k() + &c(2));
        let b = &(&n() + &c(1)) * &(&k() + &c(5));
        assert_eq!(gcd_nk(&a, &b), &n() + &c(1));
    }

    #[test]
    fn normalization_is_idempotent() {
        let f = &(&n() + &k()) + &c(1);
        let r = RatFuncNK::new(
            (&f * &k()).scale(&rint(4)),
            (&f * &(&n() + &c(2))).scale(&rint(6)),
        );
        assert_eq!(r.num(), &k().scale(&rat_two_thirds()));
        let again = RatFuncNK::new(r.num().clone(), r.den().clone());
        assert_eq!(again, r);
    }

    fn rat_two_thirds() -> Rat {
        Rat::new(2.into(), 3.into())
    }

    #[test]
    fn univariate_field_ops() {
        let a = RatFuncN::new(PolyN::linear(rint(1)), PolyN::linear(rint(2)));
        let b = RatFuncN::new(PolyN::linear(rint(2)), PolyN::linear(rint(1)));
        assert_eq!(a.mul_ref(&b), RatFuncN::one());
        let s = a.add_ref(&a.neg_ref());
        assert!(s.is_zero());
    }
}
