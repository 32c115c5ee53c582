use num_bigint::BigInt;
use num_traits::Zero;

use super::gosper::{
    assemble_from_triple, certificate_denominator, degree_plan, forced_plan, gosper_triple,
    ColumnLabel, DegreePlan, GosperTriple, LinearSystem,
};
use super::{Certificate, Telescoper};
use crate::exactmath::elim::echelon;
use crate::exactmath::modular::{modular_kernel, ModularKernel};
use crate::exactmath::matrix::{integer_poly_vector_to_polyn, integer_row, poly_rows_to_integer};
use crate::exactmath::{PolyN, PolyNK, Rat, RatFuncNK};
use crate::hyperterm::{detect_splittable, structural_params, ProperTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Added to both `Y` caps.
    pub slack: i64,
    /// Run even when the term looks like a rational function times a
    /// `k`-free term.
    pub allow_splittable: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            slack: 2,
            allow_splittable: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("term splits into a rational function times a k-free term; use the rational pipeline or override")]
    Splittable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuredOutcome {
    Found(Telescoper, Certificate),
    /// The system has only the trivial solution.
    NoKernel,
    /// Solutions exist, but all of them have `L = 0`.
    YOnlyKernel,
}

impl StructuredOutcome {
    pub fn pair(&self) -> Option<(&Telescoper, &Certificate)> {
        match self {
            StructuredOutcome::Found(l, c) => Some((l, c)),
            _ => None,
        }
    }
}

fn check_splittable(h: &ProperTerm, opts: &SolveOptions) -> Result<(), SolveError> {
    if !opts.allow_splittable && detect_splittable(h) {
        return Err(SolveError::Splittable);
    }
    Ok(())
}

/// Structured solve at `(r, d)` with the trapezoidal plan, falling back to the
/// plan with all `d_i = d` when `r < nu` or `d < |mu| nu`.
pub fn solve_structured(h: &ProperTerm, r: usize, d: usize) -> Result<StructuredOutcome, SolveError> {
    let sp = structural_params(h);
    let plan = degree_plan(&sp, r, d).unwrap_or_else(|_| forced_plan(&sp, r, d));
    solve_structured_with(
        h,
        &plan,
        &SolveOptions {
            slack: 0,
            allow_splittable: false,
        },
    )
}

pub fn solve_structured_with(
    h: &ProperTerm,
    plan: &DegreePlan,
    opts: &SolveOptions,
) -> Result<StructuredOutcome, SolveError> {
    check_splittable(h, opts)?;
    let plan = plan.clone().with_slack(opts.slack);
    let triple = gosper_triple(h, plan.r);
    let sys = assemble_from_triple(&triple, &plan);
    Ok(solve_system(h, &triple, &sys))
}

/// Elimination order: the `Y` block first, then `l`. A solution with `l != 0`
/// exists iff some `l` column ends up without a pivot.
fn y_first_order(columns: &[ColumnLabel]) -> Vec<usize> {
    let is_y = |c: &ColumnLabel| matches!(c, ColumnLabel::Y { .. });
    let ys = columns.iter().enumerate().filter(|(_, c)| is_y(c));
    let ls = columns.iter().enumerate().filter(|(_, c)| !is_y(c));
    ys.chain(ls).map(|(i, _)| i).collect()
}

pub(crate) fn solve_system(h: &ProperTerm, triple: &GosperTriple, sys: &LinearSystem) -> StructuredOutcome {
    let order = y_first_order(&sys.columns);
    let rows = sys
        .rows
        .iter()
        .map(|r| integer_row(r.iter().map(|(c, v)| (*c, v))))
        .collect::<Vec<_>>();
    let is_l = |c: usize| matches!(sys.columns[c], ColumnLabel::L { .. });
    let v: Vec<BigInt> = match modular_kernel(&rows, sys.num_cols(), &order, is_l) {
        ModularKernel::FullRank => return StructuredOutcome::NoKernel,
        ModularKernel::Found { vector, .. } => vector,
        ModularKernel::Inconclusive => {
            let e = echelon(rows, sys.num_cols(), &order);
            let Some(f) = e.free.iter().copied().find(|&c| is_l(c)) else {
                return if e.free.is_empty() {
                    StructuredOutcome::NoKernel
                } else {
                    StructuredOutcome::YOnlyKernel
                };
            };
            e.kernel_vector(f)
        }
    };
    let mut ell = vec![Vec::<Rat>::new(); triple.order + 1];
    let mut y = PolyNK::zero();
    for (label, val) in sys.columns.iter().zip(v) {
        if val.is_zero() {
            continue;
        }
        match *label {
            ColumnLabel::L { i, j } => {
                let c = &mut ell[i as usize];
                if c.len() <= j as usize {
                    c.resize(j as usize + 1, Rat::zero());
                }
                c[j as usize] = Rat::from_integer(val);
            }
            ColumnLabel::Y { i, j } => y.add_term((j, i), Rat::from_integer(val)),
        }
    }
    let coeffs = ell.into_iter().map(PolyN::new).collect();
    finish(h, triple, coeffs, y)
}

/// Normalize the operator and scale the certificate along with it.
fn finish(h: &ProperTerm, triple: &GosperTriple, coeffs: Vec<PolyN>, y: PolyNK) -> StructuredOutcome {
    let (l, scale) = Telescoper::new_with_scale(coeffs).expect("l block is nonzero");
    let num = (&triple.r * &y).scale(&scale);
    let den = certificate_denominator(h, triple.order);
    StructuredOutcome::Found(
        l,
        Certificate {
            value: RatFuncNK::from_factored(num, &den),
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeilbergerResult {
    pub telescoper: Telescoper,
    pub certificate: Certificate,
    /// Smallest order at which a telescoper was found.
    pub order: usize,
}

/// Solve over `Q(n)` for `r = 0, 1, ..., rmax`, comparing coefficients of
/// powers of `k` only. `Y` has `k`-degree at most `delta + theta r - nu + slack`.
pub fn solve_zeilberger(
    h: &ProperTerm,
    rmax: usize,
    opts: &SolveOptions,
) -> Result<Option<ZeilbergerResult>, SolveError> {
    check_splittable(h, opts)?;
    let sp = structural_params(h);
    for r in 0..=rmax {
        let triple = gosper_triple(h, r);
        let s = sp.delta + sp.theta * r as i64 - sp.nu + opts.slack;
        if let Some((telescoper, certificate)) = solve_over_ratfunc(h, &triple, s) {
            return Ok(Some(ZeilbergerResult {
                telescoper,
                certificate,
                order: r,
            }));
        }
    }
    Ok(None)
}

fn solve_over_ratfunc(h: &ProperTerm, triple: &GosperTriple, s: i64) -> Option<(Telescoper, Certificate)> {
    let r = triple.order;
    let mut columns: Vec<ColumnLabel> = (0..=r as u32).map(|i| ColumnLabel::L { i, j: 0 }).collect();
    columns.extend((0..=s.max(-1)).map(|i| ColumnLabel::Y { i: i as u32, j: 0 }));

    let k_plus_one = &PolyNK::k() + &PolyNK::one();
    let mut q_shift = triple.q.clone();
    let mut polys = triple.p_parts.clone();
    for i in 0..=s.max(-1) {
        polys.push(&triple.r.mul_monomial(0, i as u32) - &q_shift);
        q_shift = &q_shift * &k_plus_one;
    }
    let in_k: Vec<_> = polys.iter().map(|p| p.to_poly_in_k()).collect();
    let height = in_k.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    let rows: Vec<Vec<PolyN>> = (0..height)
        .map(|m| in_k.iter().map(|p| p.coeff(m)).collect())
        .collect();

    let order = y_first_order(&columns);
    let e = echelon(poly_rows_to_integer(&rows), columns.len(), &order);
    let f = e.free.iter().copied().find(|&c| c <= r)?;
    let v = integer_poly_vector_to_polyn(e.kernel_vector(f));
    let mut y = PolyNK::zero();
    for (i, yi) in v[r + 1..].iter().enumerate() {
        y = &y + &PolyNK::from_poly_n(yi).mul_monomial(0, i as u32);
    }
    match finish(h, triple, v[..=r].to_vec(), y) {
        StructuredOutcome::Found(l, c) => Some((l, c)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rint;
    use crate::hyperterm::tests_support::{example1, power_of_two};
    use crate::hyperterm::GammaArg;
    use crate::telescope::verify_pair;

    #[test]
    fn geometric_order_zero() {
        let h = power_of_two();
        let out = solve_structured(&h, 0, 0).unwrap();
        let (l, c) = out.pair().unwrap();
        assert_eq!(l.coeffs(), &[PolyN::constant(rint(1))]);
        assert_eq!(c.value, RatFuncNK::one());
        let z = solve_zeilberger(&h, 2, &SolveOptions::default()).unwrap().unwrap();
        assert_eq!(z.order, 0);
        assert!(verify_pair(&h, &z.telescoper, &z.certificate));
    }

    #[test]
    fn example1_has_no_order_zero_telescoper() {
        assert!(solve_structured(&example1(), 0, 0).unwrap().pair().is_none());
    }

    #[test]
    fn binomial_like_term() {
        // Gamma(n+k) / (Gamma(n) Gamma(k+1))
        let h = ProperTerm::new(
            PolyNK::one(),
            rint(1),
            rint(1),
            vec![
                GammaArg::classify(1, 1, rint(0), true),
                GammaArg::classify(1, 0, rint(0), false),
                GammaArg::classify(0, 1, rint(1), false),
            ],
        )
        .unwrap();
        let z = solve_zeilberger(&h, 3, &SolveOptions::default()).unwrap().unwrap();
        assert!(verify_pair(&h, &z.telescoper, &z.certificate));
        let found = (0..=3).any(|r| {
            solve_structured(&h, r, 4)
                .unwrap()
                .pair()
                .is_some_and(|(l, c)| verify_pair(&h, l, c))
        });
        assert!(found);
    }

    #[test]
    fn splittable_terms_are_refused() {
        let h = ProperTerm::new(
            PolyNK::one(),
            rint(1),
            rint(1),
            vec![
                GammaArg::classify(1, 1, rint(1), true),
                GammaArg::classify(1, 1, rint(0), false),
            ],
        )
        .unwrap();
        assert_eq!(solve_structured(&h, 1, 1), Err(SolveError::Splittable));
    }
}
