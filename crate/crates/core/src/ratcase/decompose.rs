use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{DecomposedInput, InputError, Part, RationalSummand, RecOperator};
use crate::exactmath::{Coeff, PolyN, PolyNK, Rat, RatFuncN, RatFuncNK};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("numerator degree in k must be below the denominator degree in k")]
    NotProper,
    #[error("denominator has a factor that is not integer-linear in n and k")]
    NonLinearFactor,
    #[error("not Abramov-reduced: {0} and {1} differ by a shift in k")]
    NotAbramovReduced(String, String),
    #[error(transparent)]
    Input(#[from] InputError),
}

/// Partial fractions of `p/q` in `k` over `Q(n)`, grouped into
/// `(1/u) sum V_i(f_i)`.
pub fn decompose(p: &PolyNK, q: &PolyNK) -> Result<DecomposedInput, DecomposeError> {
    if q.is_zero() {
        return Err(DecomposeError::ZeroDenominator);
    }
    if p.is_zero() {
        return Ok(DecomposedInput::new(PolyN::one(), Vec::new())?);
    }
    let dk = |x: &PolyNK| x.deg_k().finite().unwrap_or(0);
    if dk(p) >= dk(q) {
        return Err(DecomposeError::NotProper);
    }

    // split off the k-free content
    let q_in_k = q.to_poly_in_k();
    let content = q_in_k.content();
    let qt = PolyNK::from_poly_in_k(&q_in_k.div_scalar(&content));

    let factors = linear_factors(&qt)?;

    let mut entries: Vec<(RationalSummand, RatFuncN)> = Vec::new();
    for lf in &factors {
        let mut g = qt.clone();
        for _ in 0..lf.mult {
            g = g.try_exact_div(&lf.form).expect("factor divides q");
        }
        for (e, c) in principal_part(p, &g, lf) {
            if c.is_zero() {
                continue;
            }
            let c = c.mul_ref(&RatFuncN::from_poly(content.clone()).recip());
            let f = RationalSummand::new(lf.a, lf.ap, lf.app.clone(), e)?;
            entries.push((f, c));
        }
    }
    group(entries)
}

/// As [`decompose`] applied to `p/q - (S_k g - g)`.
pub fn decompose_with_g(p: &PolyNK, q: &PolyNK, g: &RatFuncNK) -> Result<DecomposedInput, DecomposeError> {
    if q.is_zero() {
        return Err(DecomposeError::ZeroDenominator);
    }
    let h = RatFuncNK::new(p.clone(), q.clone());
    let diff = &(&h - &g.shift(0, 1)) + g;
    decompose(diff.num(), diff.den())
}

#[derive(Clone, Debug)]
struct LinearFactor {
    a: i64,
    ap: i64,
    app: Rat,
    mult: u32,
    form: PolyNK,
}

fn rint(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

/// All factors `a n + a' k + a''` of a denominator that is primitive in `k`.
fn linear_factors(qt: &PolyNK) -> Result<Vec<LinearFactor>, DecomposeError> {
    let total = qt.total_degree().finite().unwrap_or(0);
    // top homogeneous part at n = 1, as a polynomial in k
    let mut top = vec![Rat::zero(); total as usize + 1];
    for (&(i, j), c) in qt.terms() {
        if i + j == total {
            top[j as usize] = c.clone();
        }
    }
    let top = PolyN::new(top);
    if top.degree() != Some(total as usize) {
        return Err(DecomposeError::NonLinearFactor);
    }

    let mut out = Vec::new();
    let mut rest = qt.clone();
    for (root, _) in rational_roots(&top) {
        // root = -a/a'
        let ap = root.denom().to_i64().ok_or(DecomposeError::NonLinearFactor)?;
        let a = (-root.numer()).to_i64().ok_or(DecomposeError::NonLinearFactor)?;
        // k = (t - a n)/a' turns the factors of this direction into t + a''
        let k_expr = PolyNK::linear(&rint(-a), &Rat::one(), &Rat::zero()).scale(&(Rat::one() / rint(ap)));
        let sub = qt.compose(&PolyNK::n(), &k_expr);
        let swapped = PolyNK::from_terms(sub.terms().map(|(&(i, j), c)| ((j, i), c.clone())));
        let in_n = swapped.to_poly_in_k();
        let cont = in_n.content();
        for (t0, _) in rational_roots(&cont) {
            let app = -t0;
            let form = PolyNK::linear(&rint(a), &rint(ap), &app);
            let mut mult = 0;
            while let Some(next) = rest.try_exact_div(&form) {
                rest = next;
                mult += 1;
            }
            if mult == 0 {
                return Err(DecomposeError::NonLinearFactor);
            }
            out.push(LinearFactor {
                a,
                ap,
                app,
                mult,
                form,
            });
        }
    }
    if rest.total_degree().finite() != Some(0) {
        return Err(DecomposeError::NonLinearFactor);
    }
    Ok(out)
}

/// Coefficients `c_e` with `p/(g F^m) = sum_e c_e F^(-e) + (terms without F)`,
/// from the Taylor expansion of `p/g` at the root of `F`.
fn principal_part(p: &PolyNK, g: &PolyNK, lf: &LinearFactor) -> Vec<(u32, RatFuncN)> {
    let ap = rint(lf.ap);
    // k = k0 + z with k0 = -(a n + a'')/a'
    let k0 = PolyNK::linear(&rint(-lf.a), &Rat::zero(), &-lf.app.clone()).scale(&(Rat::one() / &ap));
    let z_expr = &k0 + &PolyNK::k();
    let ps = p.compose(&PolyNK::n(), &z_expr).to_poly_in_k();
    let gs = g.compose(&PolyNK::n(), &z_expr).to_poly_in_k();
    let m = lf.mult as usize;
    let g0 = RatFuncN::from_poly(gs.coeff(0));
    let mut gamma: Vec<RatFuncN> = Vec::with_capacity(m);
    for j in 0..m {
        let mut acc = RatFuncN::from_poly(ps.coeff(j));
        for i in 1..=j {
            let gi = RatFuncN::from_poly(gs.coeff(i));
            acc = acc.sub_ref(&gi.mul_ref(&gamma[j - i]));
        }
        gamma.push(acc.div_exact(&g0));
    }
    (1..=lf.mult)
        .map(|e| {
            let j = (lf.mult - e) as usize;
            let scale = RatFuncN::constant(Rat::one() / pow_rat(&ap, j));
            (e, gamma[j].mul_ref(&scale))
        })
        .collect()
}

fn pow_rat(x: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

/// Principal-part coefficients keyed by `a''`.
type Cluster = Vec<(Rat, RatFuncN)>;

/// Merge entries whose linear forms differ by a shift in `n`, then clear
/// denominators into `u`.
fn group(entries: Vec<(RationalSummand, RatFuncN)>) -> Result<DecomposedInput, DecomposeError> {
    // (a, a', e) -> clusters of (a'', coefficient)
    let mut classes: BTreeMap<(i64, i64, u32), Vec<Cluster>> = BTreeMap::new();
    for (f, c) in entries {
        let clusters = classes.entry((f.a, f.ap, f.e)).or_default();
        let same = |other: &Rat| f.a != 0 && ((&f.app - other) / rint(f.a)).is_integer();
        match clusters.iter_mut().find(|cl| same(&cl[0].0)) {
            Some(cl) => cl.push((f.app, c)),
            None => clusters.push(vec![(f.app, c)]),
        }
    }

    let mut raw: Vec<(RationalSummand, Vec<RatFuncN>)> = Vec::new();
    for ((a, ap, e), clusters) in classes {
        for cl in clusters {
            let base = if a >= 0 {
                cl.iter().map(|x| &x.0).min().unwrap().clone()
            } else {
                cl.iter().map(|x| &x.0).max().unwrap().clone()
            };
            let mut coeffs: Vec<RatFuncN> = Vec::new();
            for (app, c) in cl {
                let t = if a == 0 {
                    0
                } else {
                    ((app - &base) / rint(a)).to_integer().to_usize().expect("nonnegative shift")
                };
                if coeffs.len() <= t {
                    coeffs.resize(t + 1, RatFuncN::zero());
                }
                coeffs[t] = coeffs[t].add_ref(&c);
            }
            raw.push((RationalSummand::new(a, ap, base, e)?, coeffs));
        }
    }
    // forms that are k-shifts of each other but not n-shifts cannot be split
    for (i, x) in raw.iter().enumerate() {
        for y in &raw[i + 1..] {
            if x.0.e == y.0.e && super::shift_equivalent(&x.0, &y.0) {
                let show = |f: &RationalSummand| crate::termio::format_poly(&f.linear_form(0));
                return Err(DecomposeError::NotAbramovReduced(show(&x.0), show(&y.0)));
            }
        }
    }
    raw.sort_by(|x, y| {
        (x.0.ap, x.0.a, x.0.e)
            .cmp(&(y.0.ap, y.0.a, y.0.e))
            .then_with(|| x.0.app.cmp(&y.0.app))
    });

    let mut u = PolyN::one();
    for (_, cs) in &raw {
        for c in cs {
            u = lcm(&u, c.den());
        }
    }
    let u = u.normalized();
    let parts = raw
        .into_iter()
        .map(|(f, cs)| {
            let v = cs
                .iter()
                .map(|c| {
                    let scaled = c.mul_ref(&RatFuncN::from_poly(u.clone()));
                    debug_assert!(scaled.den().is_constant());
                    scaled.num().div_scalar(&scaled.den().lc())
                })
                .collect();
            Part {
                v: RecOperator::new(v),
                f,
            }
        })
        .collect();
    Ok(DecomposedInput::new(u, parts)?)
}

fn lcm(a: &PolyN, b: &PolyN) -> PolyN {
    let g = a.gcd(b);
    (a * b).try_exact_div(&g).expect("gcd divides the product")
}

/// Rational roots with multiplicities, by the rational root test.
pub(crate) fn rational_roots(p: &PolyN) -> Vec<(Rat, u32)> {
    let mut out = Vec::new();
    if p.is_zero() {
        return out;
    }
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut rest = PolyN::new(p.coeffs()[zeros..].to_vec());
    if zeros > 0 {
        out.push((Rat::zero(), zeros as u32));
    }
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let (ip, _) = rest.to_primitive_integer();
    let dens = divisors(&ip.lc().abs());
    let nums = divisors(&ip.coeff(0).abs());
    for q in &dens {
        for n in &nums {
            if !n.gcd(q).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let x = Rat::new(n * BigInt::from(sign), q.clone());
                let lin = PolyN::new(vec![-x.clone(), Rat::one()]);
                let mut mult = 0;
                while rest.degree().unwrap_or(0) > 0 && rest.eval(&x).is_zero() {
                    rest = rest.try_exact_div(&lin).expect("root divides");
                    mult += 1;
                }
                if mult > 0 {
                    out.push((x, mult));
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= m && d < BigInt::from(1_000_000) {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for x in &out {
            let mut v = x.clone();
            for _ in 0..=e {
                next.push(v.clone());
                v *= &p;
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcase::tests_support::{rational_example1, rational_example2};

    fn lin(cn: i64, ck: i64, c0: i64) -> PolyNK {
        PolyNK::linear(&rint(cn), &rint(ck), &rint(c0))
    }

    fn ap_multiset(inp: &DecomposedInput) -> Vec<i64> {
        let mut v: Vec<i64> = inp.parts().iter().map(|p| p.f.ap()).collect();
        v.sort();
        v
    }

    #[test]
    fn roots() {
        // (2x - 3)^2 (x + 5) x
        let p = PolyN::new(vec![rint(0), rint(45), rint(-51), rint(8), rint(4)]);
        let mut r = rational_roots(&p);
        r.sort();
        assert_eq!(r, vec![(rint(-5), 1), (rint(0), 1), (Rat::new(3.into(), 2.into()), 2)]);
    }

    #[test]
    fn two_directions() {
        let (a, b) = (lin(1, 1, 0), lin(1, 2, 0));
        let inp = decompose(&(&a + &b), &(&a * &b)).unwrap();
        assert_eq!(inp.u(), &PolyN::one());
        assert_eq!(ap_multiset(&inp), vec![1, 2]);
        for p in inp.parts() {
            assert_eq!(p.v, RecOperator::new(vec![PolyN::one()]));
        }
    }

    #[test]
    fn shift_in_n_is_grouped() {
        let (a, b) = (lin(1, 1, 0), lin(1, 1, 1));
        let inp = decompose(&(&a + &b), &(&a * &b)).unwrap();
        assert_eq!(inp.parts().len(), 1);
        assert_eq!(inp.parts()[0].v, RecOperator::new(vec![PolyN::one(), PolyN::one()]));
        assert_eq!(inp.parts()[0].f.app(), &rint(0));
    }

    #[test]
    fn abramov_violation() {
        let (a, b) = (lin(2, 1, 0), lin(2, 1, 1));
        assert!(matches!(
            decompose(&PolyNK::one(), &(&a * &b)),
            Err(DecomposeError::NotAbramovReduced(..))
        ));
        let c = &(&PolyNK::k() * &PolyNK::k()) + &PolyNK::n();
        assert_eq!(decompose(&PolyNK::one(), &c), Err(DecomposeError::NonLinearFactor));
    }

    #[test]
    fn first_rational_example() {
        let (p, q) = rational_example1();
        let inp = decompose(&p, &q).unwrap();
        assert_eq!(ap_multiset(&inp), vec![1, 1, 1, 2]);
        assert_eq!(inp.deg_u(), 6);
        for part in inp.parts() {
            assert_eq!(part.v.order(), 0);
            assert_eq!(part.v.degree(), 6);
        }
        assert!(inp.to_ratfunc().cross_eq(&RatFuncNK::new(p, q)));
    }

    #[test]
    fn second_rational_example() {
        let (p, q, g) = rational_example2();
        let inp = decompose_with_g(&p, &q, &g).unwrap();
        assert_eq!(ap_multiset(&inp), vec![1, 1, 1, 2]);
        let h = &(&RatFuncNK::new(p, q) - &g.shift(0, 1)) + &g;
        assert!(inp.to_ratfunc().cross_eq(&h));
        assert_eq!(inp.deg_u(), 8);
        let mut shape: Vec<(i64, usize)> = inp.parts().iter().map(|p| (p.f.ap(), p.v.degree())).collect();
        shape.sort();
        assert_eq!(shape, vec![(1, 7), (1, 7), (1, 8), (2, 7)]);
    }
}
