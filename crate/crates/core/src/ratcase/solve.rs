use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DecomposedInput, RecOperator};
use crate::curves::RationalParams;
use crate::exactmath::elim::echelon;
use crate::exactmath::modular::{modular_kernel, ModularKernel};
use crate::exactmath::matrix::integer_row;
use crate::exactmath::{PolyN, Rat, RatFuncN};
use crate::telescope::Telescoper;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("order {r} is below sum of a'_i = {min}")]
    OrderTooSmall { r: usize, min: usize },
    #[error("degree {d} is below deg u = {deg_u}")]
    DegreeTooSmall { d: usize, deg_u: usize },
}

fn check(inp: &DecomposedInput, r: usize, d: usize) -> Result<usize, RationalError> {
    let min = inp.sum_ap();
    if r < min {
        return Err(RationalError::OrderTooSmall { r, min });
    }
    if d < inp.deg_u() {
        return Err(RationalError::DegreeTooSmall { d, deg_u: inp.deg_u() });
    }
    Ok(d - inp.deg_u())
}

/// `(unknowns, equations)` of the joint ansatz at `(r, d)`.
pub fn ansatz_counts(inp: &DecomposedInput, r: usize, d: usize) -> Result<(usize, usize), RationalError> {
    let dt = check(inp, r, d)?;
    let mut cols = (r + 1) * (dt + 1);
    let mut rows = 0;
    for p in inp.parts() {
        let (rho, delta, ap) = (p.v.order(), p.v.degree(), p.f.ap() as usize);
        cols += (r + rho + 1).saturating_sub(ap) * (dt + delta + 1);
        rows += (r + rho + 1) * (dt + delta + 1);
    }
    Ok((cols, rows))
}

pub fn to_rational_params(inp: &DecomposedInput) -> RationalParams {
    let mut params = RationalParams::new(
        inp.parts().iter().map(|p| p.f.ap()).collect(),
        inp.parts().iter().map(|p| p.v.degree() as i64).collect(),
        inp.deg_u() as i64,
    )
    .expect("one entry per part");
    params.a = Some(inp.parts().iter().map(|p| p.f.a()).collect());
    params
}

/// Joint ansatz `L~ V_i = R_i (S_n^{a'_i} - 1)` with shared `L~` of order `r`
/// and degree `d - deg u`; returns `L = L~ u`.
pub fn solve_rational(inp: &DecomposedInput, r: usize, d: usize) -> Result<Option<Telescoper>, RationalError> {
    let dt = check(inp, r, d)?;
    let lt_cols = (r + 1) * (dt + 1);
    let mut ncols = lt_cols;
    let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
    let mut row_of: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut push = |rows: &mut Vec<Vec<(usize, Rat)>>, key, col, v: Rat| {
        let idx = *row_of.entry(key).or_insert_with(|| {
            rows.push(Vec::new());
            rows.len() - 1
        });
        rows[idx].push((col, v));
    };

    for (pi, part) in inp.parts().iter().enumerate() {
        let ap = part.f.ap() as usize;
        // L~ columns: n^j S^i V = n^j v_m(n + i) S^(i + m)
        for i in 0..=r {
            let shifted: Vec<PolyN> = part.v.coeffs().iter().map(|c| c.shift_int(i as i64)).collect();
            for j in 0..=dt {
                let col = i * (dt + 1) + j;
                for (m, c) in shifted.iter().enumerate() {
                    for (deg, v) in c.coeffs().iter().enumerate() {
                        if !v.is_zero() {
                            push(&mut rows, (pi, i + m, deg + j), col, v.clone());
                        }
                    }
                }
            }
        }
        // R_i columns: -n^j S^m (S^a' - 1)
        let r_order = (r + part.v.order() + 1).saturating_sub(ap);
        for m in 0..r_order {
            for j in 0..=dt + part.v.degree() {
                push(&mut rows, (pi, m + ap, j), ncols, -Rat::one());
                push(&mut rows, (pi, m, j), ncols, Rat::one());
                ncols += 1;
            }
        }
    }

    // R columns first: an l-free column means a solution with L~ != 0
    let order: Vec<usize> = (lt_cols..ncols).chain(0..lt_cols).collect();
    let int_rows: Vec<_> = rows
        .iter()
        .map(|row| {
            let mut row = row.clone();
            row.sort_by_key(|e| e.0);
            merge(&mut row);
            integer_row(row.iter().map(|(c, v)| (*c, v)))
        })
        .collect();
    let v: Vec<BigInt> = match modular_kernel(&int_rows, ncols, &order, |c| c < lt_cols) {
        ModularKernel::FullRank => return Ok(None),
        ModularKernel::Found { vector, .. } => vector,
        ModularKernel::Inconclusive => {
            let e = echelon(int_rows, ncols, &order);
            let Some(f) = e.free.iter().copied().find(|&c| c < lt_cols) else {
                return Ok(None);
            };
            e.kernel_vector(f)
        }
    };
    let u = inp.u();
    let coeffs = (0..=r)
        .map(|i| {
            let lt = PolyN::new(
                (0..=dt)
                    .map(|j| Rat::from_integer(v[i * (dt + 1) + j].clone()))
                    .collect(),
            );
            &lt * &u.shift_int(i as i64)
        })
        .collect();
    Ok(Telescoper::new(coeffs))
}

fn merge(row: &mut Vec<(usize, Rat)>) {
    let mut out: Vec<(usize, Rat)> = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    *row = out;
}

/// Checks that `S_n^{a'_i} - 1` right-divides `L (1/u) V_i` for every part.
pub fn verify_rational(inp: &DecomposedInput, l: &[PolyN]) -> bool {
    let l = RecOperator::new(l.iter().map(|c| RatFuncN::from_poly(c.clone())).collect());
    if l.is_zero() {
        return false;
    }
    let inv_u = RecOperator::constant(RatFuncN::new(PolyN::one(), inp.u().clone()));
    let lu = l.mul(&inv_u);
    inp.parts().iter().all(|p| {
        let a = lu.mul(&p.v.to_ratfunc());
        super::right_remainder(&a, &RecOperator::shift_minus_one(p.f.ap() as usize)).is_zero()
    })
}

/// Telescoper for `h0 h` from one for `h`, where `S_n(h0)/h0 = a/b` is free of
/// `k`: `l~_i = l_i prod_{t<i} b(n+t) prod_{i<=t<r} a(n+t)`.
pub fn lift(l: &Telescoper, a: &PolyN, b: &PolyN) -> Telescoper {
    assert!(!a.is_zero() && !b.is_zero(), "cofactor ratio must be nonzero");
    let r = l.order();
    let coeffs = l
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, li)| {
            let mut c = li.clone();
            for t in 0..r {
                let f = if t < i { b } else { a };
                c = &c * &f.shift_int(t as i64);
            }
            c
        })
        .collect();
    Telescoper::new(coeffs).expect("lifted operator is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{dmin, CurveSpec};
    use crate::exactmath::rint;
    use crate::ratcase::tests_support::rational_example1;
    use crate::ratcase::{decompose, Part, RationalSummand};

    fn poly(c: &[i64]) -> PolyN {
        PolyN::new(c.iter().map(|&v| rint(v)).collect())
    }

    fn single() -> DecomposedInput {
        DecomposedInput::new(
            poly(&[1]),
            vec![Part {
                v: RecOperator::new(vec![poly(&[1])]),
                f: RationalSummand::new(1, 1, rint(0), 1).unwrap(),
            }],
        )
        .unwrap()
    }

    #[test]
    fn harmonic_like() {
        let inp = single();
        let l = solve_rational(&inp, 1, 0).unwrap().unwrap();
        assert!(verify_rational(&inp, l.coeffs()));
        assert!(!verify_rational(&inp, &[poly(&[1])]));
        let scaled: Vec<PolyN> = l.coeffs().iter().map(|c| c * &poly(&[3, 2])).collect();
        assert!(verify_rational(&inp, &scaled));
        assert!(matches!(
            solve_rational(&inp, 0, 0),
            Err(RationalError::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let l = Telescoper::new(vec![poly(&[1, 2]), poly(&[3])]).unwrap();
        let lifted = lift(&l, &poly(&[1, 1]), &poly(&[1]));
        assert_eq!(lifted.coeffs(), &[poly(&[1, 3, 2]), poly(&[3])]);
        assert_eq!(lift(&l, &poly(&[1]), &poly(&[1])), l);
    }

    #[test]
    fn first_rational_example_at_corollary_point() {
        let (p, q) = rational_example1();
        let inp = decompose(&p, &q).unwrap();
        let params = to_rational_params(&inp);
        let d = dmin(&CurveSpec::rational(&params), 5).unwrap();
        assert_eq!(d, 31);
        let l = solve_rational(&inp, 5, d).unwrap().unwrap();
        assert!(verify_rational(&inp, l.coeffs()));
        assert!(matches!(
            solve_rational(&inp, 4, 40),
            Err(RationalError::OrderTooSmall { r: 4, min: 5 })
        ));
    }

    #[test]
    fn count_excess_formula() {
        let (p, q) = rational_example1();
        let inp = decompose(&p, &q).unwrap();
        let params = to_rational_params(&inp);
        let (a, s) = (params.sum_ap(), params.sum_ap_delta());
        for r in 5..9usize {
            for d in 6..40usize {
                let (cols, rows) = ansatz_counts(&inp, r, d).unwrap();
                let dt = (d - 6) as i64;
                let r = r as i64;
                assert_eq!(cols as i64 - rows as i64, (r + 1 - a) * dt - (s + a - r - 1));
            }
        }
        // at the curve point itself the ansatz is underdetermined, yet solvable
        assert_eq!(ansatz_counts(&inp, 5, 31).unwrap(), (764, 768));
    }
}
