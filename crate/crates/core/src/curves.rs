//! Order-degree curves, special points on them, and cost-optimal orders.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::exactmath::scalar::{ceil_rat, floor_rat};
use crate::exactmath::Rat;
use crate::hyperterm::StructuralParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveCase {
    NonRational,
    Rational,
}

/// `d > (num1 r + num0) / (den1 r + den0)` for `r >= rmin`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    pub case: CurveCase,
    pub num: [Rat; 2],
    pub den: [Rat; 2],
    pub rmin: usize,
    /// Degrees below this are never admitted (`deg u` in the rational case).
    pub dfloor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("order {r} is below the threshold {rmin}")]
    BelowThreshold { r: usize, rmin: usize },
    #[error("rmax {rmax} is below the threshold {rmin}")]
    EmptyRange { rmax: usize, rmin: usize },
    #[error("rational parameters need matching lists (got {ap} values of a' and {delta} degrees)")]
    Mismatch { ap: usize, delta: usize },
}

fn ri(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

impl CurveSpec {
    pub fn nonrational(sp: &StructuralParams) -> Self {
        let (delta, theta, nu) = (sp.delta, sp.theta, sp.nu);
        let amu = sp.mu.abs();
        let c0 = Rat::new((nu * (2 * delta + amu + 3 - (1 + amu) * nu)).into(), 2.into()) - ri(1);
        CurveSpec {
            case: CurveCase::NonRational,
            num: [c0, ri(theta * nu - 1)],
            den: [ri(1 - nu), ri(1)],
            rmin: nu as usize,
            dfloor: 0,
        }
    }

    pub fn rational(params: &RationalParams) -> Self {
        let sum_ap = params.sum_ap();
        let sum_ap_delta = params.sum_ap_delta();
        let du = params.deg_u;
        // (-r - 1 + S) / (r + 1 - A) + du, over the common denominator
        CurveSpec {
            case: CurveCase::Rational,
            num: [ri(sum_ap_delta - 1 + du * (1 - sum_ap)), ri(du - 1)],
            den: [ri(1 - sum_ap), ri(1)],
            rmin: sum_ap.max(0) as usize,
            dfloor: du.max(0) as usize,
        }
    }

    pub fn bound(&self, r: usize) -> Result<Rat, CurveError> {
        if r < self.rmin {
            return Err(CurveError::BelowThreshold { r, rmin: self.rmin });
        }
        let rr = ri(r as i64);
        Ok((&self.num[0] + &self.num[1] * &rr) / (&self.den[0] + &self.den[1] * &rr))
    }

    /// Smallest integer strictly above the bound and at least `dfloor`.
    pub fn dmin(&self, r: usize) -> Result<usize, CurveError> {
        let b = self.bound(r)?;
        Ok(strictly_above(&b).max(self.dfloor))
    }

    /// Whether `(r, d)` lies strictly above the curve.
    pub fn admits(&self, r: usize, d: usize) -> bool {
        d >= self.dfloor && self.bound(r).is_ok_and(|b| ri(d as i64) > b)
    }
}

fn strictly_above(b: &Rat) -> usize {
    let v = floor_rat(b) + BigInt::one();
    if v.is_negative() {
        0
    } else {
        v.to_usize().expect("degree fits in usize")
    }
}

pub fn bound_nonrational(sp: &StructuralParams, r: usize) -> Result<Rat, CurveError> {
    CurveSpec::nonrational(sp).bound(r)
}

pub fn dmin(curve: &CurveSpec, r: usize) -> Result<usize, CurveError> {
    curve.dmin(r)
}

/// An `(r, d)` point together with whether it passed the curve inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurvePoint {
    pub r: usize,
    pub d: usize,
    pub valid: bool,
}

fn ceil_half(v: i64) -> usize {
    ceil_rat(&Rat::new(v.into(), 2.into())).to_usize().unwrap_or(0)
}

/// Minimal-order point and minimal-degree point.
pub fn corollary_nonrational(sp: &StructuralParams) -> [CurvePoint; 2] {
    let (delta, theta, nu) = (sp.delta, sp.theta, sp.nu);
    let amu = sp.mu.abs();
    let curve = CurveSpec::nonrational(sp);
    let p1 = (
        nu as usize,
        ceil_half(nu * (2 * delta + 2 * nu * theta + amu - nu * amu)),
    );
    let p2 = (
        ceil_half(nu * (1 + 2 * delta + 2 * (nu - 1) * (theta - amu))),
        (theta * nu) as usize,
    );
    [p1, p2].map(|(r, d)| CurvePoint {
        r,
        d,
        valid: curve.admits(r, d),
    })
}

/// Data entering the rational curve: `a'_i`, the `n`-degrees `delta_i` of
/// the `V_i`, `deg_n u`, and optionally the `n`-coefficients `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalParams {
    pub ap: Vec<i64>,
    pub delta: Vec<i64>,
    pub deg_u: i64,
    pub a: Option<Vec<i64>>,
}

impl RationalParams {
    pub fn new(ap: Vec<i64>, delta: Vec<i64>, deg_u: i64) -> Result<Self, CurveError> {
        if ap.len() != delta.len() {
            return Err(CurveError::Mismatch {
                ap: ap.len(),
                delta: delta.len(),
            });
        }
        Ok(RationalParams {
            ap,
            delta,
            deg_u,
            a: None,
        })
    }

    pub fn sum_ap(&self) -> i64 {
        self.ap.iter().sum()
    }

    pub fn sum_ap_delta(&self) -> i64 {
        self.ap.iter().zip(&self.delta).map(|(a, d)| a * d).sum()
    }
}

pub fn bound_rational(params: &RationalParams, r: usize) -> Result<Rat, CurveError> {
    CurveSpec::rational(params).bound(r)
}

/// How the order of the second rational corollary point is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CorollaryReading {
    /// `r = sum a'_i delta_i`; always satisfies the curve inequality.
    #[default]
    Shifted,
    /// `r = sum a_i delta_i` with the `n`-coefficients, as printed. Needs
    /// [`RationalParams::a`].
    Literal,
}

pub fn corollary_rational(params: &RationalParams, reading: CorollaryReading) -> [CurvePoint; 2] {
    let curve = CurveSpec::rational(params);
    let p1 = (
        params.sum_ap().max(0) as usize,
        (params.deg_u
            + params
                .ap
                .iter()
                .zip(&params.delta)
                .map(|(a, d)| (d - 1) * a)
                .sum::<i64>())
        .max(0) as usize,
    );
    let r2 = match (reading, &params.a) {
        (CorollaryReading::Literal, Some(a)) => a.iter().zip(&params.delta).map(|(a, d)| a * d).sum(),
        (CorollaryReading::Literal, None) => -1,
        (CorollaryReading::Shifted, _) => params.sum_ap_delta(),
    };
    let point = |r: i64, d: i64| {
        let ok = r >= 0 && d >= 0;
        let (r, d) = (r.max(0) as usize, d.max(0) as usize);
        CurvePoint {
            r,
            d,
            valid: ok && curve.admits(r, d),
        }
    };
    [point(p1.0 as i64, p1.1 as i64), point(r2, params.deg_u)]
}

/// Cost of computing a telescoper of order `r` and degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CostModel {
    /// `kappa ((theta+1) r + delta + 2)^3 (delta + theta r + d - (|mu|+1) nu + 1)`
    NonRational { kappa: Rat, params: StructuralParams },
    /// `kappa r^3 d`
    Rational { kappa: Rat },
}

impl CostModel {
    pub fn nonrational(params: StructuralParams) -> Self {
        CostModel::NonRational {
            kappa: Rat::one(),
            params,
        }
    }

    pub fn rational() -> Self {
        CostModel::Rational { kappa: Rat::one() }
    }

    pub fn with_kappa(self, kappa: Rat) -> Self {
        match self {
            CostModel::NonRational { params, .. } => CostModel::NonRational { kappa, params },
            CostModel::Rational { .. } => CostModel::Rational { kappa },
        }
    }

    pub fn kappa(&self) -> &Rat {
        match self {
            CostModel::NonRational { kappa, .. } | CostModel::Rational { kappa } => kappa,
        }
    }
}

/// Cost at a possibly non-integral degree.
pub fn cost_at(model: &CostModel, r: usize, d: &Rat) -> Rat {
    let rr = ri(r as i64);
    match model {
        CostModel::NonRational { kappa, params: sp } => {
            let m = ri(sp.theta + 1) * &rr + ri(sp.delta + 2);
            let t = ri(sp.delta) + ri(sp.theta) * &rr + d - ri((sp.mu.abs() + 1) * sp.nu) + ri(1);
            kappa * &m * &m * &m * t
        }
        CostModel::Rational { kappa } => kappa * &rr * &rr * &rr * d,
    }
}

pub fn cost(model: &CostModel, r: usize, d: usize) -> Rat {
    cost_at(model, r, &ri(d as i64))
}

/// Which degree an order is charged with when searching for the cheapest order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum DegreeRule {
    /// `bound(r) + 1`, the exact expression behind the asymptotic estimates.
    #[default]
    BoundPlusOne,
    /// The integer `dmin(r)`.
    Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Suggestion {
    pub r: usize,
    /// `dmin(r)`.
    pub d: usize,
    /// `cost(r, dmin(r))`.
    pub cost: Rat,
    /// The minimized value under the chosen degree rule.
    pub objective: Rat,
}

/// Cheapest order in `[rmin, rmax]`; ties go to the smaller order.
pub fn suggest_order(
    model: &CostModel,
    curve: &CurveSpec,
    rmax: usize,
    rule: DegreeRule,
) -> Result<Suggestion, CurveError> {
    if rmax < curve.rmin {
        return Err(CurveError::EmptyRange {
            rmax,
            rmin: curve.rmin,
        });
    }
    let mut best: Option<Suggestion> = None;
    for r in curve.rmin..=rmax {
        let bound = curve.bound(r)?;
        let d = curve.dmin(r)?;
        let objective = match rule {
            DegreeRule::BoundPlusOne => cost_at(model, r, &(bound + ri(1))),
            DegreeRule::Integer => cost(model, r, d),
        };
        if best.as_ref().is_none_or(|b| objective < b.objective) {
            best = Some(Suggestion {
                r,
                d,
                cost: cost(model, r, d),
                objective,
            });
        }
    }
    Ok(best.expect("range is nonempty"))
}

/// `(r, dmin(r))` for every `r` in the window intersected with `[rmin, ...)`.
pub fn curve_table(curve: &CurveSpec, rmin: usize, rmax: usize) -> Vec<(usize, usize)> {
    (rmin.max(curve.rmin)..=rmax)
        .map(|r| (r, curve.dmin(r).expect("r above threshold")))
        .collect()
}
