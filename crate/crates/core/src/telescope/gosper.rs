use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactmath::elim::SparseRow;
use crate::exactmath::{rising_factorial, MatrixQ, Monomial, PolyNK, Rat};
use crate::hyperterm::{Family, GammaArg, ProperTerm, StructuralParams};

/// `P = sum_i l_i P_i`, together with `Q` and `R`, for a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GosperTriple {
    pub order: usize,
    pub p_parts: Vec<PolyNK>,
    pub q: PolyNK,
    pub r: PolyNK,
}

fn shifted_arg(g: &GammaArg, by: i64) -> PolyNK {
    &g.argument() + &PolyNK::from_int(by)
}

pub fn gosper_triple(h: &ProperTerm, order: usize) -> GosperTriple {
    let r = order as u32;
    let p_parts = (0..=r)
        .map(|i| {
            let mut part = h
                .p()
                .shift(i as i64, 0)
                .scale(&num_traits::pow(h.x().clone(), i as usize));
            for g in h.factors() {
                let f = match g.family {
                    Family::A | Family::B => rising_factorial(&g.argument(), i * g.cn),
                    Family::U | Family::V => rising_factorial(
                        &shifted_arg(g, (i * g.cn) as i64),
                        (r - i) * g.cn,
                    ),
                };
                part = &part * &f;
            }
            part
        })
        .collect();
    let mut q = PolyNK::constant(h.y().clone());
    let mut rr = PolyNK::one();
    for g in h.factors() {
        let (cn, ck) = (g.cn as i64, g.ck as i64);
        match g.family {
            Family::A => q = &q * &rising_factorial(&g.argument(), g.ck),
            Family::V => q = &q * &rising_factorial(&shifted_arg(g, r as i64 * cn - ck), g.ck),
            Family::U => rr = &rr * &rising_factorial(&shifted_arg(g, r as i64 * cn - ck), g.ck),
            Family::B => rr = &rr * &rising_factorial(&g.argument(), g.ck),
        }
    }
    GosperTriple {
        order,
        p_parts,
        q,
        r: rr,
    }
}

/// Factors of `p * prod_U rf(U, r u) * prod_V rf(V, r v)`: the certificate
/// is `R Y` divided by their product. Rising factorials are split into their
/// linear factors.
pub(crate) fn certificate_denominator(h: &ProperTerm, order: usize) -> Vec<PolyNK> {
    let mut factors = vec![h.p().clone()];
    for g in h.factors().iter().filter(|g| !g.family.in_numerator()) {
        for t in 0..order as u32 * g.cn {
            factors.push(shifted_arg(g, t as i64));
        }
    }
    factors
}

/// Degree caps for the structured ansatz. A negative `s1` or `s2` means that
/// no `Y` monomial is admitted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreePlan {
    pub r: usize,
    pub d: usize,
    pub di: Vec<i64>,
    pub s1: i64,
    pub s2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("order {r} is below nu = {nu}")]
    OrderBelowNu { r: usize, nu: i64 },
    #[error("degree {d} is below |mu|*nu = {need}")]
    DegreeTooSmall { d: usize, need: i64 },
}

pub fn degree_plan(sp: &StructuralParams, r: usize, d: usize) -> Result<DegreePlan, PlanError> {
    let (ri, di) = (r as i64, d as i64);
    if ri < sp.nu {
        return Err(PlanError::OrderBelowNu { r, nu: sp.nu });
    }
    let amu = sp.mu.abs();
    if di < amu * sp.nu {
        return Err(PlanError::DegreeTooSmall {
            d,
            need: amu * sp.nu,
        });
    }
    let caps = (0..=ri)
        .map(|i| {
            let cut = if sp.mu >= 0 { sp.nu + i - ri } else { sp.nu - i };
            di - cut.max(0) * amu
        })
        .collect();
    let top = sp.delta + sp.theta * ri;
    Ok(DegreePlan {
        r,
        d,
        di: caps,
        s1: top - sp.nu,
        s2: top + di - sp.nu * amu - sp.nu,
    })
}

/// All `d_i = d`, with `Y` caps `delta + theta r - nu` and
/// `delta + theta r + d - nu`. Valid for any `(r, d)`.
pub fn forced_plan(sp: &StructuralParams, r: usize, d: usize) -> DegreePlan {
    let top = sp.delta + sp.theta * r as i64;
    DegreePlan {
        r,
        d,
        di: vec![d as i64; r + 1],
        s1: top - sp.nu,
        s2: top + d as i64 - sp.nu,
    }
}

impl DegreePlan {
    pub fn with_slack(mut self, slack: i64) -> Self {
        self.s1 += slack;
        self.s2 += slack;
        self
    }

    pub fn ell_count(&self) -> usize {
        self.di.iter().map(|&d| (d + 1).max(0) as usize).sum()
    }

    /// `(i, j)` exponents of `k^i n^j` admitted in `Y`.
    pub fn y_support(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 0..=self.s1.max(-1) {
            for j in 0..=(self.s2 - i) {
                out.push((i as u32, j as u32));
            }
        }
        out
    }
}

/// Column of the coefficient-comparison system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColumnLabel {
    /// Coefficient of `n^j` in `l_i`.
    L { i: u32, j: u32 },
    /// Coefficient of `k^i n^j` in `Y`.
    Y { i: u32, j: u32 },
}

impl fmt::Display for ColumnLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnLabel::L { i, j } => write!(f, "l[{i},{j}]"),
            ColumnLabel::Y { i, j } => write!(f, "y[{i},{j}]"),
        }
    }
}

/// Coefficient comparison of `P - Q S_k(Y) + R Y` in the monomials `n^i k^j`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub columns: Vec<ColumnLabel>,
    pub row_monomials: Vec<Monomial>,
    pub rows: Vec<SparseRow<Rat>>,
}

impl LinearSystem {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_matrix(&self) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.num_rows(), self.num_cols());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    /// Indices of the `Y` block.
    pub fn y_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, ColumnLabel::Y { .. }))
            .map(|(i, _)| i)
    }

    pub fn ell_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, ColumnLabel::L { .. }))
            .map(|(i, _)| i)
    }
}

/// The polynomial contributed by one unknown.
fn column_poly(triple: &GosperTriple, q_shifted: &[PolyNK], label: ColumnLabel) -> PolyNK {
    match label {
        ColumnLabel::L { i, j } => triple.p_parts[i as usize].mul_monomial(j, 0),
        ColumnLabel::Y { i, j } => {
            &triple.r.mul_monomial(j, i) - &q_shifted[i as usize].mul_monomial(j, 0)
        }
    }
}

pub fn assemble_system(h: &ProperTerm, plan: &DegreePlan) -> LinearSystem {
    let triple = gosper_triple(h, plan.r);
    assemble_from_triple(&triple, plan)
}

pub(crate) fn assemble_from_triple(triple: &GosperTriple, plan: &DegreePlan) -> LinearSystem {
    let mut columns = Vec::new();
    for (i, &d) in plan.di.iter().enumerate() {
        for j in 0..=d.max(-1) {
            columns.push(ColumnLabel::L {
                i: i as u32,
                j: j as u32,
            });
        }
    }
    let support = plan.y_support();
    columns.extend(support.iter().map(|&(i, j)| ColumnLabel::Y { i, j }));

    // Q (k+1)^i for every admitted k-power of Y
    let kmax = support.iter().map(|&(i, _)| i as usize + 1).max().unwrap_or(0);
    let mut q_shifted = Vec::with_capacity(kmax);
    let k_plus_one = &PolyNK::k() + &PolyNK::one();
    for i in 0..kmax {
        q_shifted.push(if i == 0 {
            triple.q.clone()
        } else {
            &q_shifted[i - 1] * &k_plus_one
        });
    }

    let mut by_monomial: BTreeMap<Monomial, SparseRow<Rat>> = BTreeMap::new();
    for (c, &label) in columns.iter().enumerate() {
        for (m, v) in column_poly(triple, &q_shifted, label).terms() {
            if !v.is_zero() {
                by_monomial.entry(*m).or_default().push((c, v.clone()));
            }
        }
    }
    let (row_monomials, rows) = by_monomial.into_iter().unzip();
    LinearSystem {
        columns,
        row_monomials,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rint;
    use crate::hyperterm::structural_params;
    use crate::hyperterm::tests_support::{example1, example2, power_of_two};

    #[test]
    fn triple_for_geometric_term() {
        let t = gosper_triple(&power_of_two(), 1);
        assert_eq!(t.p_parts, vec![PolyNK::one(), PolyNK::one()]);
        assert_eq!(t.q, PolyNK::from_int(2));
        assert_eq!(t.r, PolyNK::one());
    }

    #[test]
    fn triple_for_example1_order_zero() {
        let t = gosper_triple(&example1(), 0);
        let a = &PolyNK::n().scale(&rint(2)) + &PolyNK::k().scale(&rint(3));
        let v1 = &(&PolyNK::n().scale(&rint(2)) - &PolyNK::k()) - &PolyNK::one();
        assert_eq!(t.q, &rising_factorial(&a, 3) * &v1);
        assert_eq!(t.r, PolyNK::one());
    }

    #[test]
    fn k_degree_of_parts_is_bounded() {
        let h = example1();
        for r in 0..5 {
            let t = gosper_triple(&h, r);
            for part in &t.p_parts {
                assert!(part.deg_k().finite().unwrap() as usize <= 2 + 2 * r);
            }
            assert!(t.q.total_degree().finite().unwrap() <= 4);
            assert!(t.r.total_degree().finite().unwrap() <= 4);
        }
    }

    #[test]
    fn plan_formulas() {
        let sp = StructuralParams {
            delta: 0,
            theta: 3,
            lambda: 2,
            mu: 1,
            nu: 2,
        };
        assert_eq!(degree_plan(&sp, 5, 10).unwrap().di, vec![10, 10, 10, 10, 9, 8]);
        let sp2 = structural_params(&example2());
        let plan = degree_plan(&sp2, 3, 24).unwrap();
        assert_eq!((plan.s1, plan.s2), (6, 30));
        assert!(matches!(
            degree_plan(&sp2, 2, 24),
            Err(PlanError::OrderBelowNu { .. })
        ));
        let sp3 = StructuralParams { mu: -2, ..sp };
        assert!(matches!(
            degree_plan(&sp3, 5, 3),
            Err(PlanError::DegreeTooSmall { .. })
        ));
        assert_eq!(degree_plan(&sp3, 5, 10).unwrap().di, vec![6, 8, 10, 10, 10, 10]);
    }

    #[test]
    fn system_sizes() {
        let h = power_of_two();
        let plan = degree_plan(&structural_params(&h), 0, 0).unwrap();
        let sys = assemble_system(&h, &plan);
        assert_eq!(sys.num_cols(), 2);
        assert_eq!(sys.num_rows(), 1);
        assert_eq!(sys.rows[0], vec![(0, rint(1)), (1, rint(-1))]);

        let h2 = example2();
        let plan = degree_plan(&structural_params(&h2), 3, 24).unwrap();
        let sys = assemble_system(&h2, &plan);
        assert_eq!(sys.num_cols(), 296);
        assert!(sys.num_rows() <= 295);
    }
}
