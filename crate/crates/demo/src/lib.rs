//! Browser bindings: analyse a term, find a telescoper, decompose a rational
//! function. Every export takes the same text formats as the command line.

use wasm_bindgen::prelude::*;

use telescopers::curves::{curve_table, suggest_order, CostModel, CurveSpec, DegreeRule};
use telescopers::hyperterm::structural_params;
use telescopers::ratcase::{decompose, decompose_with_g, to_rational_params};
use telescopers::telescope::{
    degree_plan, forced_plan, solve_structured_with, solve_zeilberger, verify_pair, SolveOptions,
    StructuredOutcome,
};
use telescopers::termio;

/// Orders tried by the Zeilberger search when no order is given.
const DEFAULT_RMAX: usize = 6;

/// Parameters, the curve up to `rmax` and the cheapest order.
pub fn term_report(text: &str, rmax: usize) -> Result<String, String> {
    let h = termio::parse_term(text).map_err(|e| e.to_string())?;
    let sp = structural_params(&h);
    let curve = CurveSpec::nonrational(&sp);
    let mut out = format!(
        "delta={} theta={} lambda={} mu={} nu={}\n",
        sp.delta, sp.theta, sp.lambda, sp.mu, sp.nu
    );
    let rows = curve_table(&curve, curve.rmin, rmax.max(curve.rmin));
    out += &termio::curve_csv(&rows).map_err(|e| e.to_string())?;
    let s = suggest_order(&CostModel::nonrational(sp), &curve, rmax.max(curve.rmin), DegreeRule::default())
        .map_err(|e| e.to_string())?;
    out += &format!("suggested: r={} d={} cost={}\n", s.r, s.d, s.cost);
    Ok(out)
}

/// Structured solve when both `order` and `degree` are given, otherwise the
/// Zeilberger search up to `order` (default 6).
pub fn find_telescoper(text: &str, order: Option<usize>, degree: Option<usize>) -> Result<String, String> {
    let h = termio::parse_term(text).map_err(|e| e.to_string())?;
    let opts = SolveOptions::default();
    let (l, c) = match (order, degree) {
        (Some(r), Some(d)) => {
            let sp = structural_params(&h);
            let plan = degree_plan(&sp, r, d).unwrap_or_else(|_| forced_plan(&sp, r, d));
            match solve_structured_with(&h, &plan, &opts).map_err(|e| e.to_string())? {
                StructuredOutcome::Found(l, c) => (l, c),
                _ => return Err(format!("no telescoper at (r, d) = ({r}, {d})")),
            }
        }
        (r, _) => {
            let rmax = r.unwrap_or(DEFAULT_RMAX);
            match solve_zeilberger(&h, rmax, &opts).map_err(|e| e.to_string())? {
                Some(z) => (z.telescoper, z.certificate),
                None => return Err(format!("no telescoper of order <= {rmax}")),
            }
        }
    };
    let ok = verify_pair(&h, &l, &c);
    Ok(format!(
        "# order {} degree {}, verified: {ok}\n{}",
        l.order(),
        l.degree(),
        termio::serialize_pair(&l, &c)
    ))
}

/// Decomposition of a rational file and its curve up to `rmax`.
pub fn rational_report(text: &str, rmax: usize) -> Result<String, String> {
    let f = termio::parse_rational(text).map_err(|e| e.to_string())?;
    let inp = match &f.g {
        Some(g) => decompose_with_g(&f.p, &f.q, g),
        None => decompose(&f.p, &f.q),
    }
    .map_err(|e| e.to_string())?;
    let curve = CurveSpec::rational(&to_rational_params(&inp));
    let rows = curve_table(&curve, curve.rmin, rmax.max(curve.rmin));
    Ok(format!(
        "{}{}",
        termio::serialize_decomp(&inp),
        termio::curve_csv(&rows).map_err(|e| e.to_string())?
    ))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = termReport)]
pub fn term_report_js(text: &str, rmax: usize) -> Result<String, JsValue> {
    js(term_report(text, rmax))
}

#[wasm_bindgen(js_name = findTelescoper)]
pub fn find_telescoper_js(text: &str, order: Option<usize>, degree: Option<usize>) -> Result<String, JsValue> {
    js(find_telescoper(text, order, degree))
}

#[wasm_bindgen(js_name = rationalReport)]
pub fn rational_report_js(text: &str, rmax: usize) -> Result<String, JsValue> {
    js(rational_report(text, rmax))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE1: &str = "poly: n^2+k^2+1\nnum: Gamma(2*n+3*k)\nden: Gamma(2*n-k)\n";
    const BINOMIAL: &str = "num: Gamma(n + 1)\nden: Gamma(k + 1), Gamma(n - k + 1)\n";

    #[test]
    fn report_lists_curve_and_suggestion() {
        let out = term_report(EXAMPLE1, 6).unwrap();
        assert!(out.starts_with("delta=2 theta=2 lambda=2 mu=0 nu=4\nr,d_min\n4,34\n5,21\n6,16\n"));
        assert!(out.ends_with("suggested: r=4 d=34 cost=167936\n"));
        assert!(term_report("poly: n +", 6).is_err());
    }

    #[test]
    fn telescoper_both_modes() {
        let z = find_telescoper(BINOMIAL, None, None).unwrap();
        assert!(z.starts_with("# order 1 degree 0, verified: true\nL: [-2, 1]\n"), "{z}");
        let s = find_telescoper(BINOMIAL, Some(1), Some(1)).unwrap();
        assert!(s.contains("verified: true"));
        assert!(find_telescoper(EXAMPLE1, Some(0), Some(0)).is_err());
    }

    #[test]
    fn rational_decomposition() {
        let out = rational_report("p: 1\nq: (n + k)*(n + k + 1)\n", 3).unwrap();
        assert!(out.starts_with("u: 1\n"), "{out}");
        assert!(out.contains("r,d_min\n1,0\n2,0\n3,0\n"), "{out}");
    }
}
