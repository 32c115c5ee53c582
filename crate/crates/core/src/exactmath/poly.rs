//! Sparse bivariate polynomials in `n` and `k` over the rationals.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{Coeff, Rat};
use super::upoly::{PolyN, UPoly};

/// Exponent pair `(i, j)` for the monomial `n^i k^j`.
pub type Monomial = (u32, u32);

/// Degree of a polynomial. The zero polynomial has its own variant so that
/// degree arithmetic never touches a numeric sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Sparse polynomial in `n`, `k`. No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyNK {
    terms: BTreeMap<Monomial, Rat>,
}

impl PolyNK {
    pub fn zero() -> Self {
        PolyNK::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        PolyNK { terms }
    }

    pub fn n() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn k() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    /// `cn*n + ck*k + c0`
    pub fn linear(cn: &Rat, ck: &Rat, c0: &Rat) -> Self {
        let mut p = Self::constant(c0.clone());
        p.add_term((1, 0), cn.clone());
        p.add_term((0, 1), ck.clone());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Embed a polynomial in `n`.
    pub fn from_poly_n(p: &PolyN) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// Embed a polynomial in `k`.
    pub fn from_poly_k(p: &PolyN) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| ((0, j as u32), c.clone())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|&(i, j)| i + j)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn deg_n(&self) -> Degree {
        self.terms
            .keys()
            .map(|&(i, _)| i)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn deg_k(&self) -> Degree {
        self.terms
            .keys()
            .map(|&(_, j)| j)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Leading monomial and coefficient in graded lexicographic order with `n > k`.
    pub fn leading_term(&self) -> Option<(Monomial, &Rat)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, i))
            .map(|(&m, c)| (m, c))
    }

    pub fn is_k_free(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j == 0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyNK {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Multiply by `n^i k^j`.
    pub fn mul_monomial(&self, i: u32, j: u32) -> Self {
        PolyNK {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Common denominator `D` and integer polynomial `D * self`.
    fn to_integer_terms(&self) -> (BigInt, Vec<(Monomial, BigInt)>) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
            .collect();
        (den, terms)
    }

    /// Substitute `n -> n + dn`, `k -> k + dk`.
    pub fn shift(&self, dn: i64, dk: i64) -> Self {
        if dn == 0 && dk == 0 {
            return self.clone();
        }
        let dn = Rat::from_integer(dn.into());
        let dk = Rat::from_integer(dk.into());
        self.shift_rat(&dn, &dk)
    }

    /// Substitute `n -> n + dn`, `k -> k + dk` for rational offsets.
    pub fn shift_rat(&self, dn: &Rat, dk: &Rat) -> Self {
        let max_i = self.deg_n().finite().unwrap_or(0) as usize;
        let max_j = self.deg_k().finite().unwrap_or(0) as usize;
        let pow_n = binomial_powers(dn, max_i);
        let pow_k = binomial_powers(dk, max_j);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            for (a, ca) in pow_n[i as usize].iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let cca = c * ca;
                for (b, cb) in pow_k[j as usize].iter().enumerate() {
                    if !cb.is_zero() {
                        out.add_term((a as u32, b as u32), &cca * cb);
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, n: &Rat, k: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow_rat(n, i) * pow_rat(k, j);
        }
        acc
    }

    /// Specialize `n` to a value, giving a polynomial in `k`.
    pub fn eval_n(&self, n: &Rat) -> PolyN {
        let mut coeffs = vec![Rat::zero(); self.deg_k().finite().map_or(0, |d| d as usize + 1)];
        for (&(i, j), c) in &self.terms {
            coeffs[j as usize] += c * pow_rat(n, i);
        }
        UPoly::new(coeffs)
    }

    /// View as a polynomial in `k` with coefficients in `Q[n]`.
    pub fn to_poly_in_k(&self) -> UPoly<PolyN> {
        let dk = match self.deg_k().finite() {
            None => return UPoly::zero(),
            Some(d) => d as usize,
        };
        let mut cols: Vec<Vec<Rat>> = vec![Vec::new(); dk + 1];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, Rat::zero());
            }
            col[i as usize] = c.clone();
        }
        UPoly::new(cols.into_iter().map(UPoly::new).collect())
    }

    pub fn from_poly_in_k(p: &UPoly<PolyN>) -> Self {
        let mut out = Self::zero();
        for (j, cj) in p.coeffs().iter().enumerate() {
            for (i, c) in cj.coeffs().iter().enumerate() {
                out.add_term((i as u32, j as u32), c.clone());
            }
        }
        out
    }

    /// Treat a `k`-free polynomial as a polynomial in `n`.
    pub fn to_poly_n(&self) -> Option<PolyN> {
        if !self.is_k_free() {
            return None;
        }
        let d = self.deg_n().finite().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Rat::zero(); d];
        for (&(i, _), c) in &self.terms {
            coeffs[i as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    /// Substitute polynomials for both variables.
    pub fn compose(&self, n_expr: &PolyNK, k_expr: &PolyNK) -> Self {
        let max_i = self.deg_n().finite().unwrap_or(0);
        let max_j = self.deg_k().finite().unwrap_or(0);
        let mut pn = vec![Self::one()];
        for _ in 0..max_i {
            let next = pn.last().unwrap() * n_expr;
            pn.push(next);
        }
        let mut pk = vec![Self::one()];
        for _ in 0..max_j {
            let next = pk.last().unwrap() * k_expr;
            pk.push(next);
        }
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let t = (&pn[i as usize] * &pk[j as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    /// Rational content: gcd of numerators over lcm of denominators, signed so
    /// that the graded-lex leading coefficient of the quotient is positive.
    pub fn content(&self) -> Rat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rat::one();
        }
        let mut content = Rat::new(num, den);
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        content
    }

    /// Primitive integer-coefficient representative with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.content().recip())
    }

    /// Exact division, `None` if `divisor` does not divide `self`.
    pub fn try_exact_div(&self, divisor: &PolyNK) -> Option<PolyNK> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let a = self.to_poly_in_k();
        let b = divisor.to_poly_in_k();
        let db = b.degree()?;
        let lc = b.lc();
        let mut rem = a.into_coeffs();
        if rem.len() <= db {
            return None;
        }
        let mut quot = vec![PolyN::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            if rem[i + db].is_zero() {
                continue;
            }
            let c = rem[i + db].try_exact_div(&lc)?;
            for (j, bj) in b.coeffs().iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * bj);
            }
            quot[i] = c;
        }
        if rem[..db].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_poly_in_k(&UPoly::new(quot)))
    }
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    num_traits::pow(x.clone(), e as usize)
}

/// Coefficient lists of `(x + c)^m` for `m = 0..=max`.
fn binomial_powers(c: &Rat, max: usize) -> Vec<Vec<Rat>> {
    let mut out = vec![vec![Rat::one()]];
    for m in 1..=max {
        let prev = &out[m - 1];
        let mut next = vec![Rat::zero(); m + 1];
        for (t, v) in prev.iter().enumerate() {
            next[t + 1] += v.clone();
            next[t] += v * c;
        }
        out.push(next);
    }
    out
}

/// Rising factorial `p (p+1) ... (p+m-1)`; equals 1 for `m = 0`.
pub fn rising_factorial(p: &PolyNK, m: u32) -> PolyNK {
    let mut out = PolyNK::one();
    for t in 0..m {
        let factor = p + &PolyNK::from_int(t as i64);
        out = &out * &factor;
    }
    out
}

impl Add for &PolyNK {
    type Output = PolyNK;
    fn add(self, rhs: &PolyNK) -> PolyNK {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &PolyNK {
    type Output = PolyNK;
    fn sub(self, rhs: &PolyNK) -> PolyNK {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &PolyNK {
    type Output = PolyNK;
    fn neg(self) -> PolyNK {
        PolyNK {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &PolyNK {
    type Output = PolyNK;
    fn mul(self, rhs: &PolyNK) -> PolyNK {
        if self.is_zero() || rhs.is_zero() {
            return PolyNK::zero();
        }
        // integer products, one rational rescale at the end
        let (da, ta) = self.to_integer_terms();
        let (db, tb) = rhs.to_integer_terms();
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for ((i1, j1), c1) in &ta {
            for ((i2, j2), c2) in &tb {
                let e = acc.entry((i1 + i2, j1 + j2)).or_insert_with(BigInt::zero);
                *e += c1 * c2;
            }
        }
        let den = da * db;
        PolyNK {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, Rat::new(c, den.clone())))
                .collect(),
        }
    }
}

impl Add for PolyNK {
    type Output = PolyNK;
    fn add(self, rhs: PolyNK) -> PolyNK {
        &self + &rhs
    }
}

impl Sub for PolyNK {
    type Output = PolyNK;
    fn sub(self, rhs: PolyNK) -> PolyNK {
        &self - &rhs
    }
}

impl Mul for PolyNK {
    type Output = PolyNK;
    fn mul(self, rhs: PolyNK) -> PolyNK {
        &self * &rhs
    }
}

impl Coeff for PolyNK {
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
        self.try_exact_div(other).expect("inexact bivariate division")
    }
    fn bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).sum()
    }
}

impl Zero for PolyNK {
    fn zero() -> Self {
        PolyNK::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PolyNK {
    fn one() -> Self {
        PolyNK::one()
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
    fn rising_factorial_conventions() {
        let p = &(&n() * &k()) + &c(3);
        assert!(rising_factorial(&p, 0).is_one());
        assert_eq!(rising_factorial(&p, 1), p);
        assert_eq!(rising_factorial(&n(), 2), &n().pow(2) + &n());
        let q = &n().scale(&rint(2)) - &k();
        let expect = &q * &(&q + &c(1));
        assert_eq!(rising_factorial(&q, 2), expect);
        assert_eq!(rising_factorial(&q, 2).total_degree(), Degree::Finite(2));
    }

    #[test]
    fn shift_examples() {
        assert_eq!((&n() + &k()).shift(1, 0), &(&n() + &k()) + &c(1));
        assert_eq!((&n() * &k()).shift(0, 1), &(&n() * &k()) + &n());
        let expect = &(&n().pow(2) - &n().scale(&rint(2))) + &c(1);
        assert_eq!(n().pow(2).shift(-1, 0), expect);
    }

    #[test]
    fn zero_degree_is_distinct() {
        assert_eq!(PolyNK::zero().total_degree(), Degree::NegInfinity);
        assert_eq!(c(5).total_degree(), Degree::Finite(0));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn exact_division() {
        let a = &(&n() + &k()) + &c(1);
        let b = &(&n() - &k().scale(&rint(2))) + &c(3);
        let prod = &a * &b;
        assert_eq!(prod.try_exact_div(&a), Some(b.clone()));
        assert_eq!(prod.try_exact_div(&(&a + &c(1))), None);
    }

    #[test]
    fn compose_substitutes() {
        // (n + k)^2 with n -> n, k -> t - n  gives t^2 (with t written as k)
        let p = (&n() + &k()).pow(2);
        let out = p.compose(&n(), &(&k() - &n()));
        assert_eq!(out, k().pow(2));
    }
}
