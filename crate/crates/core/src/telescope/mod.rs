//! Telescopers for non-rational proper terms via the Gosper equation
//! `P = Q S_k(Y) - R Y`.

mod gosper;
mod region;
mod solve;
mod verify;

pub use gosper::{
    assemble_system, degree_plan, forced_plan, gosper_triple, ColumnLabel, DegreePlan,
    GosperTriple, LinearSystem, PlanError,
};
pub use region::{region_scan, region_scan_with, Region};
pub use solve::{
    solve_structured, solve_structured_with, solve_zeilberger, SolveError, SolveOptions,
    StructuredOutcome, ZeilbergerResult,
};
pub use verify::verify_pair;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{PolyN, RatFuncNK, Rat};

/// `l_0 + l_1 S_n + ... + l_r S_n^r` with integer polynomial coefficients of
/// content one and positive leading coefficient in the highest nonzero `l_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Telescoper {
    coeffs: Vec<PolyN>,
}

impl Telescoper {
    /// Drops zero top coefficients and normalizes; `None` for the zero operator.
    pub fn new(coeffs: Vec<PolyN>) -> Option<Self> {
        Self::new_with_scale(coeffs).map(|(t, _)| t)
    }

    /// Also returns the factor the input was multiplied by.
    pub fn new_with_scale(mut coeffs: Vec<PolyN>) -> Option<(Self, Rat)> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return None;
        }
        let (coeffs, scale) = normalize_coeffs(coeffs);
        Some((Telescoper { coeffs }, scale))
    }

    pub fn coeffs(&self) -> &[PolyN] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest `n`-degree among the coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }
}

/// Clear denominators, remove integer content and fix the sign.
pub(crate) fn normalize_coeffs(mut coeffs: Vec<PolyN>) -> (Vec<PolyN>, Rat) {
    let all = || coeffs.iter().flat_map(|c| c.coeffs().iter());
    let den = crate::exactmath::scalar::denominator_lcm(all());
    let num_gcd = all().fold(BigInt::zero(), |g, v| g.gcd(&(v.numer() * (&den / v.denom()))));
    if num_gcd.is_zero() {
        return (coeffs, Rat::one());
    }
    let sign_negative = coeffs
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.lc().is_negative());
    let mut scale = Rat::new(den, num_gcd);
    if sign_negative {
        scale = -scale;
    }
    for c in coeffs.iter_mut() {
        *c = c.scale(&scale);
    }
    (coeffs, scale)
}

/// The rational function `C` of a telescoping relation `L(h) = S_k(C h) - C h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub value: RatFuncNK,
}
