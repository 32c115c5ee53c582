//! Telescopers for rational functions `p/q` in `n, k` whose denominator
//! splits into integer-linear factors.
//!
//! The input is brought into the form `(1/u) sum V_i(f_i)` with
//! `f_i = (a n + a' k + a'')^(-e)`, and an operator `L` is a telescoper iff
//! `S_n^{a'_i} - 1` right-divides `L (1/u) V_i` for every part.

mod decompose;
mod operator;
mod solve;

pub use decompose::{decompose, decompose_with_g, DecomposeError};
pub use operator::{right_div_rem, right_remainder, RecOperator, ShiftN};
pub use solve::{
    ansatz_counts, lift, solve_rational, to_rational_params, verify_rational, RationalError,
};

use crate::exactmath::{PolyN, PolyNK, Rat, RatFuncNK};
use num_integer::Integer;
use num_traits::Zero;

/// `(a n + a' k + a'')^(-e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSummand {
    a: i64,
    ap: i64,
    app: Rat,
    e: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("k-coefficient must be positive, got {0}")]
    NonPositiveAp(i64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("gcd(a, a') must be 1, got a = {a}, a' = {ap}")]
    NotCoprime { a: i64, ap: i64 },
    #[error("u must be nonzero")]
    ZeroU,
    #[error("parts {0} and {1} have the same exponent and differ by an integer shift in k")]
    ShiftEquivalent(usize, usize),
}

impl RationalSummand {
    pub fn new(a: i64, ap: i64, app: Rat, e: u32) -> Result<Self, InputError> {
        if ap <= 0 {
            return Err(InputError::NonPositiveAp(ap));
        }
        if e == 0 {
            return Err(InputError::ZeroExponent);
        }
        if a.gcd(&ap) != 1 {
            return Err(InputError::NotCoprime { a, ap });
        }
        Ok(RationalSummand { a, ap, app, e })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn ap(&self) -> i64 {
        self.ap
    }

    pub fn app(&self) -> &Rat {
        &self.app
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// `a (n + t) + a' k + a''`.
    pub fn linear_form(&self, t: i64) -> PolyNK {
        let c0 = &self.app + Rat::from_integer((self.a * t).into());
        PolyNK::linear(&Rat::from_integer(self.a.into()), &Rat::from_integer(self.ap.into()), &c0)
    }
}

/// Two summands conflict when `(a_i/a'_i - a_j/a'_j) n + (a''_i/a'_i - a''_j/a'_j)`
/// is an integer.
fn shift_equivalent(x: &RationalSummand, y: &RationalSummand) -> bool {
    let r = |v: i64| Rat::from_integer(v.into());
    let dn = r(x.a) / r(x.ap) - r(y.a) / r(y.ap);
    let d0 = &x.app / r(x.ap) - &y.app / r(y.ap);
    dn.is_zero() && d0.is_integer()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub v: RecOperator,
    pub f: RationalSummand,
}

/// `h = (1/u) sum_i V_i(f_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedInput {
    u: PolyN,
    parts: Vec<Part>,
}

impl DecomposedInput {
    pub fn new(u: PolyN, parts: Vec<Part>) -> Result<Self, InputError> {
        if u.is_zero() {
            return Err(InputError::ZeroU);
        }
        for (i, x) in parts.iter().enumerate() {
            for (j, y) in parts.iter().enumerate().skip(i + 1) {
                if x.f.e == y.f.e && shift_equivalent(&x.f, &y.f) {
                    return Err(InputError::ShiftEquivalent(i, j));
                }
            }
        }
        Ok(DecomposedInput { u, parts })
    }

    pub fn u(&self) -> &PolyN {
        &self.u
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn sum_ap(&self) -> usize {
        self.parts.iter().map(|p| p.f.ap as usize).sum()
    }

    pub fn deg_u(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    /// The rational function this input stands for.
    pub fn to_ratfunc(&self) -> RatFuncNK {
        let mut acc = RatFuncNK::zero();
        for p in &self.parts {
            acc = &acc + &apply_operator(&p.v, &p.f);
        }
        let u = RatFuncNK::from_poly(PolyNK::from_poly_n(&self.u));
        &acc / &u
    }
}

/// `V(f) = sum_t c_t(n) (a (n + t) + a' k + a'')^(-e)` over a common
/// denominator.
pub fn apply_operator(v: &RecOperator, f: &RationalSummand) -> RatFuncNK {
    let terms: Vec<(PolyNK, PolyNK)> = v
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(t, c)| (PolyNK::from_poly_n(c), f.linear_form(t as i64).pow(f.e)))
        .collect();
    if terms.is_empty() {
        return RatFuncNK::zero();
    }
    if f.a == 0 {
        let num = terms.iter().fold(PolyNK::zero(), |acc, (c, _)| &acc + c);
        let lin = f.linear_form(0);
        return RatFuncNK::from_factored(num, &vec![lin; f.e as usize]);
    }
    let mut num = PolyNK::zero();
    for (i, (c, _)) in terms.iter().enumerate() {
        let mut t = c.clone();
        for (j, (_, d)) in terms.iter().enumerate() {
            if i != j {
                t = &t * d;
            }
        }
        num = &num + &t;
    }
    let mut factors = Vec::new();
    for (t, c) in v.coeffs().iter().enumerate() {
        if !c.is_zero() {
            factors.extend(std::iter::repeat_n(f.linear_form(t as i64), f.e as usize));
        }
    }
    RatFuncNK::from_factored(num, &factors)
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::exactmath::rint;

    fn lin(cn: i64, ck: i64, c0: i64) -> PolyNK {
        PolyNK::linear(&rint(cn), &rint(ck), &rint(c0))
    }

    /// `(2n-3k)(3n-2k)^2 / ((n+k+2)(n+2k+1)(2n+k+1)(3n+k+1))`.
    pub fn rational_example1() -> (PolyNK, PolyNK) {
        let p = &lin(2, -3, 0) * &lin(3, -2, 0).pow(2);
        let q = &(&lin(1, 1, 2) * &lin(1, 2, 1)) * &(&lin(2, 1, 1) * &lin(3, 1, 1));
        (p, q)
    }

    /// Numerator, denominator and `g` of the second rational example.
    pub fn rational_example2() -> (PolyNK, PolyNK, RatFuncNK) {
        let p = &lin(1, -1, 1).pow(2) * &lin(2, -3, 5);
        let q = &(&(&lin(1, 1, 3) * &lin(1, 1, 5)) * &lin(1, 2, 1)) * &lin(2, 1, 1).pow(2);
        let gn = (&(&lin(1, 0, 3).pow(2) * &lin(1, 0, 4)) * &lin(2, 2, 7)).scale(&rint(10));
        let gd = &(&(&lin(1, 0, -4).pow(2) * &lin(1, 0, 9)) * &lin(1, 1, 3)) * &lin(1, 1, 4);
        (p, q, RatFuncNK::new(gn, gd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rint;

    fn poly(c: &[i64]) -> PolyN {
        PolyN::new(c.iter().map(|&v| rint(v)).collect())
    }

    #[test]
    fn apply_examples() {
        let f = RationalSummand::new(1, 1, rint(0), 1).unwrap();
        let nk = PolyNK::linear(&rint(1), &rint(1), &rint(0));
        let got = apply_operator(&RecOperator::new(vec![poly(&[1])]), &f);
        assert!(got.cross_eq(&RatFuncNK::new(PolyNK::one(), nk.clone())));

        let got = apply_operator(&RecOperator::new(vec![poly(&[1]), poly(&[1])]), &f);
        let want = RatFuncNK::new(
            PolyNK::linear(&rint(2), &rint(2), &rint(1)),
            &nk * &nk.shift(1, 0),
        );
        assert!(got.cross_eq(&want));

        let g = RationalSummand::new(1, 2, rint(0), 1).unwrap();
        let got = apply_operator(&RecOperator::new(vec![poly(&[]), poly(&[0, 1])]), &g);
        let want = RatFuncNK::new(PolyNK::n(), PolyNK::linear(&rint(1), &rint(2), &rint(1)));
        assert!(got.cross_eq(&want));
    }

    #[test]
    fn summand_invariants() {
        assert!(RationalSummand::new(2, 4, rint(0), 1).is_err());
        assert!(RationalSummand::new(1, 0, rint(0), 1).is_err());
        assert!(RationalSummand::new(1, 1, rint(0), 0).is_err());
        let part = |c| Part {
            v: RecOperator::new(vec![poly(&[1])]),
            f: RationalSummand::new(1, 2, c, 1).unwrap(),
        };
        assert_eq!(
            DecomposedInput::new(poly(&[1]), vec![part(rint(0)), part(rint(2))]),
            Err(InputError::ShiftEquivalent(0, 1))
        );
        assert!(DecomposedInput::new(poly(&[1]), vec![part(rint(0)), part(rint(1))]).is_ok());
    }
}
