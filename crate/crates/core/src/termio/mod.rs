//! Text formats: term files, decomposition files, operator files and CSV
//! tables.
//!
//! All files are line oriented, one `key: value` per line. Blank lines and
//! lines starting with `#` are ignored.

mod expr;

pub use expr::parse_poly;

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactmath::{PolyN, PolyNK, Rat, RatFuncNK};
use crate::hyperterm::{GammaArg, ProperTerm, TermError};
use crate::ratcase::{DecomposedInput, InputError, Part, RationalSummand, RecOperator};
use crate::telescope::{Certificate, Telescoper};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TermioError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: negative n-coefficient in Gamma argument")]
    NegativeN { line: usize, col: usize },
    #[error("{line}:{col}: non-integer linear coefficient in Gamma argument")]
    NonInteger { line: usize, col: usize },
    #[error("missing key '{0}'")]
    Missing(&'static str),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("operator is zero")]
    ZeroOperator,
    #[error(transparent)]
    Csv(#[from] CsvError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("csv: {0}")]
pub struct CsvError(String);

impl TermioError {
    fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        TermioError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }
}

/// A `key: value` line with the position of the value.
#[derive(Clone, Debug)]
struct Entry<'a> {
    key: &'a str,
    value: &'a str,
    line: usize,
    col: usize,
}

fn entries(text: &str) -> Result<Vec<Entry<'_>>, TermioError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let t = line.trim_start();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let Some(colon) = line.find(':') else {
            let col = line.len() - t.len() + 1;
            return Err(TermioError::syntax(i + 1, col, "expected 'key: value'"));
        };
        let key = line[..colon].trim();
        let value = &line[colon + 1..];
        out.push(Entry {
            key,
            value,
            line: i + 1,
            col: line[..colon + 1].chars().count() + 1,
        });
    }
    Ok(out)
}

/// Keys that may appear at most once.
fn single_keys<'a>(
    es: &[Entry<'a>],
    allowed: &[&'static str],
) -> Result<BTreeMap<&'static str, Entry<'a>>, TermioError> {
    let mut map = BTreeMap::new();
    for e in es {
        let Some(&key) = allowed.iter().find(|k| **k == e.key) else {
            return Err(TermioError::syntax(e.line, 1, format!("unknown key '{}'", e.key)));
        };
        if map.insert(key, e.clone()).is_some() {
            return Err(TermioError::syntax(e.line, 1, format!("duplicate key '{key}'")));
        }
    }
    Ok(map)
}

fn poly_of(e: &Entry<'_>) -> Result<PolyNK, TermioError> {
    expr::parse_poly_at(e.value, e.line, e.col)
}

fn constant_of(e: &Entry<'_>) -> Result<Rat, TermioError> {
    let p = poly_of(e)?;
    match p.to_poly_n() {
        Some(q) if q.degree().unwrap_or(0) == 0 => Ok(q.coeff(0)),
        _ => Err(TermioError::syntax(e.line, e.col, "expected a constant")),
    }
}

fn poly_n_of(e: &Entry<'_>) -> Result<PolyN, TermioError> {
    poly_of(e)?
        .to_poly_n()
        .ok_or_else(|| TermioError::syntax(e.line, e.col, "expected a polynomial in n only"))
}

/// Splits `value` at top-level commas, returning pieces with their columns.
fn split_commas(value: &str, col: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in value.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((&value[start..i], col + value[..start].chars().count()));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((&value[start..], col + value[..start].chars().count()));
    out
}

/// Strips `open ... close` around a value.
fn bracketed<'a>(e: &Entry<'a>, open: char, close: char) -> Result<(&'a str, usize), TermioError> {
    let t = e.value.trim();
    let lead = e.value.len() - e.value.trim_start().len();
    match t.strip_prefix(open).and_then(|s| s.strip_suffix(close)) {
        Some(inner) => Ok((inner, e.col + lead + 1)),
        None => Err(TermioError::syntax(
            e.line,
            e.col + lead,
            format!("expected '{open}...{close}'"),
        )),
    }
}

fn poly_list(e: &Entry<'_>) -> Result<Vec<PolyN>, TermioError> {
    let (inner, col) = bracketed(e, '[', ']')?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_commas(inner, col)
        .into_iter()
        .map(|(s, c)| {
            expr::parse_poly_at(s, e.line, c)?
                .to_poly_n()
                .ok_or_else(|| TermioError::syntax(e.line, c, "expected a polynomial in n only"))
        })
        .collect()
}

fn gamma_list(e: &Entry<'_>, numerator: bool) -> Result<Vec<GammaArg>, TermioError> {
    if e.value.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (piece, col) in split_commas(e.value, e.col) {
        let lead = piece.len() - piece.trim_start().len();
        let col = col + lead;
        let t = piece.trim();
        let inner = t
            .strip_prefix("Gamma(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| TermioError::syntax(e.line, col, "expected Gamma(<linear expression>)"))?;
        let arg = expr::parse_poly_at(inner, e.line, col + 6)?;
        if arg.total_degree().finite().unwrap_or(0) > 1 {
            return Err(TermioError::syntax(e.line, col, "Gamma argument must be linear"));
        }
        let (cn, ck, c0) = (arg.coeff(1, 0), arg.coeff(0, 1), arg.coeff(0, 0));
        if !cn.is_integer() || !ck.is_integer() {
            return Err(TermioError::NonInteger { line: e.line, col });
        }
        if cn.is_negative() {
            return Err(TermioError::NegativeN { line: e.line, col });
        }
        if cn.is_zero() && ck.is_zero() {
            return Err(TermioError::syntax(e.line, col, "Gamma argument must involve n or k"));
        }
        let big = || TermioError::syntax(e.line, col, "coefficient too large");
        let cn = cn.to_integer().to_u32().ok_or_else(big)?;
        let ck = ck.to_integer().to_i64().ok_or_else(big)?;
        out.push(GammaArg::classify(cn, ck, c0, numerator));
    }
    Ok(out)
}

/// Keys `poly`, `x`, `y`, `num`, `den`; any of them may be omitted
/// (defaults 1, 1, 1, empty, empty).
pub fn parse_term(text: &str) -> Result<ProperTerm, TermioError> {
    let es = entries(text)?;
    let map = single_keys(&es, &["poly", "x", "y", "num", "den"])?;
    let p = map.get("poly").map(poly_of).transpose()?.unwrap_or_else(PolyNK::one);
    let x = map.get("x").map(constant_of).transpose()?.unwrap_or_else(Rat::one);
    let y = map.get("y").map(constant_of).transpose()?.unwrap_or_else(Rat::one);
    let mut factors = map.get("num").map(|e| gamma_list(e, true)).transpose()?.unwrap_or_default();
    factors.extend(map.get("den").map(|e| gamma_list(e, false)).transpose()?.unwrap_or_default());
    Ok(ProperTerm::new(p, x, y, factors)?)
}

pub fn serialize_term(h: &ProperTerm) -> String {
    let gammas = |num: bool| {
        h.factors()
            .iter()
            .filter(|g| g.family.in_numerator() == num)
            .map(|g| format!("Gamma({})", format_poly(&g.argument())))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "poly: {}\nx: {}\ny: {}\nnum: {}\nden: {}\n",
        format_poly(h.p()),
        h.x(),
        h.y(),
        gammas(true),
        gammas(false)
    )
}

/// Key `u` followed by repeated `f: (a, a', a'', e)` / `V: [c_0, c_1, ...]`
/// pairs, one pair per part.
pub fn parse_decomp(text: &str) -> Result<DecomposedInput, TermioError> {
    let es = entries(text)?;
    let mut u = None;
    let mut parts = Vec::new();
    let mut pending: Option<RationalSummand> = None;
    for e in &es {
        match e.key {
            "u" if u.is_none() => u = Some(poly_n_of(e)?),
            "f" if pending.is_none() => pending = Some(summand_of(e)?),
            "V" => {
                let f = pending
                    .take()
                    .ok_or_else(|| TermioError::syntax(e.line, 1, "'V' must follow an 'f' line"))?;
                parts.push(Part {
                    v: RecOperator::new(poly_list(e)?),
                    f,
                });
            }
            "u" | "f" => return Err(TermioError::syntax(e.line, 1, format!("unexpected '{}'", e.key))),
            other => return Err(TermioError::syntax(e.line, 1, format!("unknown key '{other}'"))),
        }
    }
    if pending.is_some() {
        return Err(TermioError::Missing("V"));
    }
    let u = u.ok_or(TermioError::Missing("u"))?;
    Ok(DecomposedInput::new(u, parts)?)
}

fn summand_of(e: &Entry<'_>) -> Result<RationalSummand, TermioError> {
    let (inner, col) = bracketed(e, '(', ')')?;
    let pieces = split_commas(inner, col);
    if pieces.len() != 4 {
        return Err(TermioError::syntax(e.line, col, "expected (a, a', a'', e)"));
    }
    let mut vals = Vec::with_capacity(4);
    for (s, c) in pieces {
        let p = expr::parse_poly_at(s, e.line, c)?;
        match p.to_poly_n() {
            Some(q) if q.degree().unwrap_or(0) == 0 => vals.push((q.coeff(0), c)),
            _ => return Err(TermioError::syntax(e.line, c, "expected a constant")),
        }
    }
    let int = |i: usize| -> Result<i64, TermioError> {
        let (v, c) = &vals[i];
        if !v.is_integer() {
            return Err(TermioError::NonInteger { line: e.line, col: *c });
        }
        v.to_integer()
            .to_i64()
            .ok_or_else(|| TermioError::syntax(e.line, *c, "value too large"))
    };
    let (a, ap, exp) = (int(0)?, int(1)?, int(3)?);
    let exp = u32::try_from(exp).map_err(|_| TermioError::syntax(e.line, vals[3].1, "exponent must be positive"))?;
    Ok(RationalSummand::new(a, ap, vals[2].0.clone(), exp)?)
}

pub fn serialize_decomp(inp: &DecomposedInput) -> String {
    let mut s = format!("u: {}\n", format_poly_n(inp.u()));
    for p in inp.parts() {
        let f = &p.f;
        s.push_str(&format!("f: ({}, {}, {}, {})\n", f.a(), f.ap(), f.app(), f.e()));
        s.push_str(&format!("V: {}\n", format_list(p.v.coeffs())));
    }
    s
}

/// A rational function `p/q`, optionally with a `g` to subtract as
/// `S_k(g) - g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFile {
    pub p: PolyNK,
    pub q: PolyNK,
    pub g: Option<RatFuncNK>,
}

/// Keys `p`, `q`, and optionally `gnum`, `gden`.
pub fn parse_rational(text: &str) -> Result<RationalFile, TermioError> {
    let es = entries(text)?;
    let map = single_keys(&es, &["p", "q", "gnum", "gden"])?;
    let p = poly_of(map.get("p").ok_or(TermioError::Missing("p"))?)?;
    let q = poly_of(map.get("q").ok_or(TermioError::Missing("q"))?)?;
    if q.is_zero() {
        let e = &map["q"];
        return Err(TermioError::syntax(e.line, e.col, "denominator is zero"));
    }
    let g = match (map.get("gnum"), map.get("gden")) {
        (None, None) => None,
        (Some(n), d) => {
            let den = d.map(poly_of).transpose()?.unwrap_or_else(PolyNK::one);
            if den.is_zero() {
                return Err(TermioError::syntax(d.unwrap().line, d.unwrap().col, "denominator is zero"));
            }
            Some(RatFuncNK::new(poly_of(n)?, den))
        }
        (None, Some(_)) => return Err(TermioError::Missing("gnum")),
    };
    Ok(RationalFile { p, q, g })
}

/// True when the text looks like a decomposition file rather than `p/q`.
pub fn is_decomp_text(text: &str) -> bool {
    entries(text).is_ok_and(|es| es.iter().any(|e| e.key == "u"))
}

/// `L: [l_0, ..., l_r]` and, for pairs, `cnum:` / `cden:` lines.
pub fn serialize_telescoper(l: &Telescoper) -> String {
    format!("L: {}\n", format_list(l.coeffs()))
}

pub fn serialize_pair(l: &Telescoper, c: &Certificate) -> String {
    format!(
        "{}cnum: {}\ncden: {}\n",
        serialize_telescoper(l),
        format_poly(c.value.num()),
        format_poly(c.value.den())
    )
}

/// An operator file: the telescoper and, if present, the certificate.
pub fn parse_operator(text: &str) -> Result<(Telescoper, Option<Certificate>), TermioError> {
    let es = entries(text)?;
    let map = single_keys(&es, &["L", "cnum", "cden"])?;
    let l = poly_list(map.get("L").ok_or(TermioError::Missing("L"))?)?;
    let l = Telescoper::new(l).ok_or(TermioError::ZeroOperator)?;
    let c = match (map.get("cnum"), map.get("cden")) {
        (None, None) => None,
        (Some(n), d) => {
            let den = d.map(poly_of).transpose()?.unwrap_or_else(PolyNK::one);
            if den.is_zero() {
                return Err(TermioError::syntax(d.unwrap().line, d.unwrap().col, "denominator is zero"));
            }
            Some(Certificate {
                value: RatFuncNK::new_unreduced(poly_of(n)?, den),
            })
        }
        (None, Some(_)) => return Err(TermioError::Missing("cnum")),
    };
    Ok((l, c))
}

pub fn parse_telescoper(text: &str) -> Result<Telescoper, TermioError> {
    Ok(parse_operator(text)?.0)
}

fn format_list(cs: &[PolyN]) -> String {
    let items: Vec<String> = cs.iter().map(format_poly_n).collect();
    format!("[{}]", items.join(", "))
}

pub fn format_poly_n(p: &PolyN) -> String {
    format_poly(&PolyNK::from_poly_n(p))
}

/// Terms by decreasing total degree, then decreasing power of `n`.
pub fn format_poly(p: &PolyNK) -> String {
    let mut terms: Vec<_> = p.terms().collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|a, b| {
        let (ta, tb) = (a.0 .0 + a.0 .1, b.0 .0 + b.0 .1);
        tb.cmp(&ta).then(b.0 .0.cmp(&a.0 .0))
    });
    let mut s = String::new();
    for (idx, (&(i, j), c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !mag.is_one() || (i == 0 && j == 0) {
            factors.push(mag.to_string());
        }
        for (v, e) in [("n", i), ("k", j)] {
            match e {
                0 => {}
                1 => factors.push(v.to_string()),
                _ => factors.push(format!("{v}^{e}")),
            }
        }
        s.push_str(&factors.join("*"));
    }
    s
}

/// Writes a header and rows as CSV.
pub fn emit_csv<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> Result<String, TermioError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let err = |e: csv::Error| TermioError::Csv(CsvError(e.to_string()));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r.iter().map(|x| x.as_ref())).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| TermioError::Csv(CsvError(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn curve_csv(rows: &[(usize, usize)]) -> Result<String, TermioError> {
    let rows: Vec<Vec<String>> = rows.iter().map(|(r, d)| vec![r.to_string(), d.to_string()]).collect();
    emit_csv(&["r", "d_min"], &rows)
}

pub fn region_csv(cells: impl IntoIterator<Item = (usize, usize, bool)>) -> Result<String, TermioError> {
    let rows: Vec<Vec<String>> = cells
        .into_iter()
        .map(|(r, d, e)| vec![r.to_string(), d.to_string(), u8::from(e).to_string()])
        .collect();
    emit_csv(&["r", "d", "exists"], &rows)
}

pub fn cost_csv(rows: &[(usize, usize, Rat)]) -> Result<String, TermioError> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|(r, d, c)| vec![r.to_string(), d.to_string(), c.to_string()])
        .collect();
    emit_csv(&["r", "d_min", "cost"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rint;
    use crate::hyperterm::structural_params;
    use crate::hyperterm::tests_support::{example1, power_of_two};

    #[test]
    fn example_terms() {
        let text = "poly: n^2+k^2+1\nx: 1\ny: 1\nnum: Gamma(2*n+3*k)\nden: Gamma(2*n-1*k)\n";
        let h = parse_term(text).unwrap();
        assert_eq!(h, example1());
        let sp = structural_params(&h);
        assert_eq!((sp.delta, sp.theta, sp.mu, sp.nu), (2, 2, 0, 4));
        assert_eq!(parse_term("poly: 1\nx: 1\ny: 2\nnum:\nden:\n").unwrap(), power_of_two());
        assert_eq!(parse_term(&serialize_term(&h)).unwrap(), h);
    }

    #[test]
    fn sign_constraints() {
        assert!(matches!(
            parse_term("num: Gamma(-1*n+k)"),
            Err(TermioError::NegativeN { line: 1, col: 6 })
        ));
        assert!(matches!(
            parse_term("poly: 1\nden: Gamma(n + 1/2*k)"),
            Err(TermioError::NonInteger { line: 2, .. })
        ));
        assert!(parse_term("num: Gamma(n + 1/2)").is_ok());
        assert!(parse_term("nums: Gamma(n)").is_err());
    }

    #[test]
    fn decomp_round_trip() {
        let inp = parse_decomp("u: 1\nf: (1, 1, 0, 1)\nV: [1]\n").unwrap();
        assert_eq!(inp.u(), &PolyN::one());
        assert_eq!(inp.parts().len(), 1);
        assert_eq!(inp.parts()[0].f, RationalSummand::new(1, 1, rint(0), 1).unwrap());
        assert_eq!(parse_decomp(&serialize_decomp(&inp)).unwrap(), inp);
        assert!(parse_decomp("u: 1\nf: (2, 4, 0, 1)\nV: [1]\n").is_err());
        assert!(parse_decomp("u: 1\nV: [1]\n").is_err());
    }

    #[test]
    fn operator_round_trip() {
        let l = Telescoper::new(vec![
            PolyN::new(vec![rint(1), rint(-2)]),
            PolyN::new(vec![]),
            PolyN::new(vec![rat_half(), rint(0), rint(3)]),
        ])
        .unwrap();
        let text = serialize_telescoper(&l);
        assert_eq!(parse_telescoper(&text).unwrap(), l);
    }

    fn rat_half() -> Rat {
        Rat::new(1.into(), 2.into())
    }

    #[test]
    fn poly_formatting() {
        let p = parse_poly("3 - n*k + 1/2*k^2 - n^2").unwrap();
        assert_eq!(format_poly(&p), "-n^2 - n*k + 1/2*k^2 + 3");
        assert_eq!(parse_poly(&format_poly(&p)).unwrap(), p);
        assert_eq!(format_poly(&PolyNK::zero()), "0");
    }

    #[test]
    fn csv_tables() {
        let text = curve_csv(&[(4, 34), (5, 21)]).unwrap();
        assert_eq!(text, "r,d_min\n4,34\n5,21\n");
        let text = cost_csv(&[(4, 34, rat_half())]).unwrap();
        assert_eq!(text, "r,d_min,cost\n4,34,1/2\n");
    }
}
