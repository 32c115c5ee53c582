//! Proper hypergeometric terms
//!
//! `h = p(n,k) x^n y^k * prod Gamma(...)` where every Gamma argument is
//! integer-linear in `n` and `k`. The product is kept as a flat list of
//! [`GammaArg`]s, each tagged with its family:
//!
//! | family | position    | argument         |
//! |--------|-------------|------------------|
//! | `A`    | numerator   | `a n + a' k + a''` |
//! | `B`    | numerator   | `b n - b' k + b''` |
//! | `U`    | denominator | `u n + u' k + u''` |
//! | `V`    | denominator | `v n - v' k + v''` |

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactmath::{rising_factorial, PolyNK, Rat, RatFuncNK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    U,
    V,
}

impl Family {
    pub fn in_numerator(self) -> bool {
        matches!(self, Family::A | Family::B)
    }

    /// Sign with which the `k`-coefficient enters the argument.
    pub fn k_sign(self) -> i64 {
        match self {
            Family::A | Family::U => 1,
            Family::B | Family::V => -1,
        }
    }
}

/// One Gamma factor `Gamma(cn*n ± ck*k + c0)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaArg {
    pub cn: u32,
    pub ck: u32,
    pub c0: Rat,
    pub family: Family,
}

impl GammaArg {
    pub fn new(cn: u32, ck: u32, c0: Rat, family: Family) -> Self {
        GammaArg { cn, ck, c0, family }
    }

    /// Classify a factor from its position and signed `k`-coefficient. A
    /// zero `k`-coefficient goes to `A` (numerator) or `U` (denominator).
    pub fn classify(cn: u32, ck_signed: i64, c0: Rat, numerator: bool) -> Self {
        let family = match (numerator, ck_signed < 0) {
            (true, false) => Family::A,
            (true, true) => Family::B,
            (false, false) => Family::U,
            (false, true) => Family::V,
        };
        GammaArg::new(cn, ck_signed.unsigned_abs() as u32, c0, family)
    }

    /// The argument as a polynomial.
    pub fn argument(&self) -> PolyNK {
        PolyNK::linear(
            &Rat::from_integer(self.cn.into()),
            &Rat::from_integer((self.family.k_sign() * self.ck as i64).into()),
            &self.c0,
        )
    }

    pub fn signed_ck(&self) -> i64 {
        self.family.k_sign() * self.ck as i64
    }
}

/// A proper hypergeometric term. Factors are kept sorted so that equal terms
/// compare equal regardless of input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProperTerm {
    p: PolyNK,
    x: Rat,
    y: Rat,
    factors: Vec<GammaArg>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("polynomial part must be nonzero")]
    ZeroPolynomial,
    #[error("geometric base {0} must be nonzero")]
    ZeroBase(&'static str),
}

impl ProperTerm {
    pub fn new(p: PolyNK, x: Rat, y: Rat, mut factors: Vec<GammaArg>) -> Result<Self, TermError> {
        if p.is_zero() {
            return Err(TermError::ZeroPolynomial);
        }
        if x.is_zero() {
            return Err(TermError::ZeroBase("x"));
        }
        if y.is_zero() {
            return Err(TermError::ZeroBase("y"));
        }
        factors.sort();
        Ok(ProperTerm { p, x, y, factors })
    }

    pub fn p(&self) -> &PolyNK {
        &self.p
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn factors(&self) -> &[GammaArg] {
        &self.factors
    }

    pub fn family(&self, f: Family) -> impl Iterator<Item = &GammaArg> {
        self.factors.iter().filter(move |g| g.family == f)
    }

    /// Numerator and denominator of `S_n(h)/h`, not reduced.
    pub fn sigma_n_parts(&self) -> (PolyNK, PolyNK) {
        let mut num = self.p.shift(1, 0).scale(&self.x);
        let mut den = self.p.clone();
        for g in &self.factors {
            let f = rising_factorial(&g.argument(), g.cn);
            if g.family.in_numerator() {
                num = &num * &f;
            } else {
                den = &den * &f;
            }
        }
        (num, den)
    }

    /// Numerator and denominator of `S_k(h)/h`, not reduced.
    pub fn sigma_k_parts(&self) -> (PolyNK, PolyNK) {
        let mut num = self.p.shift(0, 1).scale(&self.y);
        let mut den = self.p.clone();
        for g in &self.factors {
            let arg = g.argument();
            let ck = Rat::from_integer(g.ck.into());
            match g.family {
                Family::A => num = &num * &rising_factorial(&arg, g.ck),
                Family::U => den = &den * &rising_factorial(&arg, g.ck),
                Family::V => {
                    let shifted = &arg - &PolyNK::constant(ck);
                    num = &num * &rising_factorial(&shifted, g.ck);
                }
                Family::B => {
                    let shifted = &arg - &PolyNK::constant(ck);
                    den = &den * &rising_factorial(&shifted, g.ck);
                }
            }
        }
        (num, den)
    }
}

/// `S_n(h)/h` as a reduced rational function.
pub fn sigma_n(h: &ProperTerm) -> RatFuncNK {
    let (num, den) = h.sigma_n_parts();
    RatFuncNK::new(num, den)
}

/// `S_k(h)/h` as a reduced rational function.
pub fn sigma_k(h: &ProperTerm) -> RatFuncNK {
    let (num, den) = h.sigma_k_parts();
    RatFuncNK::new(num, den)
}

/// The five integers governing the order-degree curve of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StructuralParams {
    pub delta: i64,
    pub theta: i64,
    pub lambda: i64,
    pub mu: i64,
    pub nu: i64,
}

impl StructuralParams {
    /// Checks `lambda + mu >= 0`, `theta = lambda + max(mu, 0)` and `theta >= |mu|`.
    pub fn is_consistent(&self) -> bool {
        self.lambda + self.mu >= 0
            && self.theta == self.lambda + self.mu.max(0)
            && self.theta >= self.mu.abs()
            && self.nu >= 0
            && self.lambda >= 0
    }
}

pub fn structural_params(h: &ProperTerm) -> StructuralParams {
    let sum = |fam: Family, f: fn(&GammaArg) -> u32| -> i64 {
        h.family(fam).map(|g| f(g) as i64).sum()
    };
    let cn = |g: &GammaArg| g.cn;
    let ck = |g: &GammaArg| g.ck;
    let num_n = sum(Family::A, cn) + sum(Family::B, cn);
    let den_n = sum(Family::U, cn) + sum(Family::V, cn);
    StructuralParams {
        delta: h.p.total_degree().finite().map_or(0, |d| d as i64),
        theta: num_n.max(den_n),
        lambda: den_n,
        mu: num_n - den_n,
        nu: (sum(Family::A, ck) + sum(Family::V, ck)).max(sum(Family::U, ck) + sum(Family::B, ck)),
    }
}

/// Sufficient syntactic test for `h = q * h0` with `q` rational and `h0`
/// free of `k`-dependence in its shift quotient: `y = 1` and the Gamma factors
/// involving `k` cancel in pairs (`A` against `U`, `B` against `V`) up to
/// integer shifts. `false` is inconclusive.
pub fn detect_splittable(h: &ProperTerm) -> bool {
    if !h.y.is_one() {
        return false;
    }
    // class key: (cn, ck, fractional part of c0)
    let mut balance: BTreeMap<(bool, u32, u32, Rat), i64> = BTreeMap::new();
    for g in h.factors.iter().filter(|g| g.ck != 0) {
        let frac = &g.c0 - g.c0.floor();
        let plus_k = matches!(g.family, Family::A | Family::U);
        let delta = if g.family.in_numerator() { 1 } else { -1 };
        *balance.entry((plus_k, g.cn, g.ck, frac)).or_insert(0) += delta;
    }
    balance.values().all(|v| *v == 0)
}

/// Value of `h` at a point where every Gamma argument is a positive integer,
/// computed with factorials. `None` when some argument is not a positive
/// integer.
pub fn eval_at_integers(h: &ProperTerm, n: i64, k: i64) -> Option<Rat> {
    let nr = Rat::from_integer(n.into());
    let kr = Rat::from_integer(k.into());
    let mut v = h.p.eval(&nr, &kr) * pow_signed(&h.x, n)? * pow_signed(&h.y, k)?;
    for g in &h.factors {
        let arg = g.argument().eval(&nr, &kr);
        if !arg.is_integer() || arg <= Rat::zero() {
            return None;
        }
        let m: u64 = arg.to_integer().try_into().ok()?;
        let fact = Rat::from_integer((1..m).fold(num_bigint::BigInt::one(), |acc, t| acc * t));
        if g.family.in_numerator() {
            v *= fact;
        } else {
            v /= fact;
        }
    }
    Some(v)
}

fn pow_signed(base: &Rat, e: i64) -> Option<Rat> {
    if e >= 0 {
        Some(num_traits::pow(base.clone(), e as usize))
    } else {
        Some(num_traits::pow(base.recip(), e.unsigned_abs() as usize))
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::exactmath::rint;

    fn n() -> PolyNK {
        PolyNK::n()
    }
    fn k() -> PolyNK {
        PolyNK::k()
    }

    pub(crate) fn example1() -> ProperTerm {
        let p = &(&n().pow(2) + &k().pow(2)) + &PolyNK::one();
        ProperTerm::new(
            p,
            rint(1),
            rint(1),
            vec![
                GammaArg::classify(2, 3, rint(0), true),
                GammaArg::classify(2, -1, rint(0), false),
            ],
        )
        .unwrap()
    }

    pub(crate) fn example2() -> ProperTerm {
        ProperTerm::new(
            PolyNK::one(),
            rint(1),
            rint(1),
            vec![
                GammaArg::classify(2, 1, rint(0), true),
                GammaArg::classify(1, -1, rint(2), true),
                GammaArg::classify(2, -1, rint(0), false),
                GammaArg::classify(1, 2, rint(0), false),
            ],
        )
        .unwrap()
    }

    pub(crate) fn power_of_two() -> ProperTerm {
        ProperTerm::new(PolyNK::one(), rint(1), rint(2), vec![]).unwrap()
    }
}
