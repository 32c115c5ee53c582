//! The `telescopers` command line.
//!
//! Exit status is 0 on success, 1 when no telescoper exists at the requested
//! point (or a pair fails verification), and 2 for unusable input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::curves::{cost, curve_table, suggest_order, CostModel, CurveSpec, DegreeRule};
use crate::exactmath::{PolyN, Rat};
use crate::hyperterm::{structural_params, ProperTerm};
use crate::ratcase::{
    decompose, decompose_with_g, lift, solve_rational, to_rational_params, verify_rational, DecomposedInput,
};
use crate::telescope::{
    region_scan_with, solve_structured_with, solve_zeilberger, verify_pair, SolveOptions, StructuredOutcome,
};
use crate::termio::{self, TermioError};

/// Environment variable holding the worker count for parallel scans.
pub const THREADS_ENV: &str = "TELESCOPERS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "telescopers", version, about = "Creative telescoping with order-degree curves")]
struct Cli {
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct Window {
    #[arg(long)]
    rmin: Option<usize>,
    #[arg(long, default_value_t = 20)]
    rmax: usize,
    /// Also write the table to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Structured,
    Zeilberger,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    Bound,
    Integer,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the structural parameters of a term.
    Params { term: PathBuf },
    /// Minimal degrees along the order-degree curve.
    Curve {
        term: PathBuf,
        #[command(flatten)]
        window: Window,
    },
    /// Compute a telescoper and certificate.
    Telescope {
        term: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        slack: Option<i64>,
        /// Largest order tried by the rational-function solver.
        #[arg(long, default_value_t = 10)]
        rmax: usize,
        #[arg(long)]
        allow_splittable: bool,
    },
    /// Scan which (r, d) cells admit a telescoper.
    Region {
        term: PathBuf,
        #[arg(long)]
        rmax: usize,
        #[arg(long)]
        dmax: usize,
        #[arg(long, default_value_t = 0)]
        slack: i64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        allow_splittable: bool,
    },
    /// Check a telescoper and certificate for a term.
    Verify { term: PathBuf, operator: PathBuf },
    /// Cost along the curve.
    Cost {
        term: PathBuf,
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        kappa: Option<String>,
    },
    /// Cheapest order according to the cost model.
    Suggest {
        input: PathBuf,
        #[arg(long, default_value_t = 50)]
        rmax: usize,
        #[arg(long)]
        kappa: Option<String>,
        #[arg(long, value_enum, default_value_t = Rule::Bound)]
        rule: Rule,
        /// Treat the input as a rational function or decomposition.
        #[arg(long)]
        rational: bool,
    },
    /// Curve of a rational input.
    RatCurve {
        input: PathBuf,
        #[command(flatten)]
        window: Window,
    },
    /// Telescoper of a rational input.
    RatTelescope {
        input: PathBuf,
        #[arg(long)]
        order: usize,
        /// Defaults to the minimal degree on the curve.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Check a telescoper for a rational input.
    RatVerify { input: PathBuf, operator: PathBuf },
    /// Partial fractions of a rational function.
    Decompose { input: PathBuf },
    /// Telescoper for h0 h from one for h, where S_n(h0)/h0 = a/b.
    Lift {
        operator: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Debug)]
enum Failure {
    /// Exit 1.
    NotFound(String),
    /// Exit 2.
    Input(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_term(path: &Path) -> Result<ProperTerm, Failure> {
    termio::parse_term(&read(path)?).map_err(|e| located(path, e))
}

fn located(path: &Path, e: TermioError) -> Failure {
    match e {
        TermioError::Syntax { .. } | TermioError::NegativeN { .. } | TermioError::NonInteger { .. } => {
            Failure::Input(format!("{}:{e}", path.display()))
        }
        _ => Failure::Input(format!("{}: {e}", path.display())),
    }
}

fn load_rational(path: &Path) -> Result<DecomposedInput, Failure> {
    let text = read(path)?;
    if termio::is_decomp_text(&text) {
        return termio::parse_decomp(&text).map_err(|e| located(path, e));
    }
    let f = termio::parse_rational(&text).map_err(|e| located(path, e))?;
    Ok(match &f.g {
        Some(g) => decompose_with_g(&f.p, &f.q, g)?,
        None => decompose(&f.p, &f.q)?,
    })
}

fn parse_kappa(k: &Option<String>) -> Result<Rat, Failure> {
    match k {
        None => Ok(Rat::from_integer(1.into())),
        Some(s) => {
            let p = termio::parse_poly(s)?;
            match p.to_poly_n() {
                Some(q) if q.degree().unwrap_or(0) == 0 && q.coeff(0) > Rat::from_integer(0.into()) => Ok(q.coeff(0)),
                _ => Err(Failure::Input(format!("kappa must be a positive constant, got '{s}'"))),
            }
        }
    }
}

fn parse_poly_n(s: &str) -> Result<PolyN, Failure> {
    termio::parse_poly(s)?
        .to_poly_n()
        .ok_or_else(|| Failure::Input(format!("'{s}' must not involve k")))
}

fn table(curve: &CurveSpec, w: &Window) -> Result<Vec<(usize, usize)>, Failure> {
    let rmin = w.rmin.unwrap_or(curve.rmin);
    if rmin.max(curve.rmin) > w.rmax {
        return Err(Failure::Input(format!(
            "empty window: rmax {} is below {}",
            w.rmax,
            rmin.max(curve.rmin)
        )));
    }
    Ok(curve_table(curve, rmin, w.rmax))
}

fn csv_out(text: String, csv: &Option<PathBuf>) -> Result<String, Failure> {
    if let Some(p) = csv {
        write_file(p, &text)?;
    }
    Ok(text)
}

fn init_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn execute(cmd: Command, err: &mut dyn Write) -> Result<String, Failure> {
    match cmd {
        Command::Params { term } => {
            let sp = structural_params(&load_term(&term)?);
            Ok(format!(
                "delta={} theta={} lambda={} mu={} nu={}\n",
                sp.delta, sp.theta, sp.lambda, sp.mu, sp.nu
            ))
        }
        Command::Curve { term, window } => {
            let curve = CurveSpec::nonrational(&structural_params(&load_term(&term)?));
            csv_out(termio::curve_csv(&table(&curve, &window)?)?, &window.csv)
        }
        Command::Telescope {
            term,
            order,
            degree,
            mode,
            slack,
            rmax,
            allow_splittable,
        } => {
            let h = load_term(&term)?;
            let mode = mode.unwrap_or(if degree.is_some() { Mode::Structured } else { Mode::Zeilberger });
            match mode {
                Mode::Structured => {
                    let (Some(r), Some(d)) = (order, degree) else {
                        return Err(Failure::Input("structured mode needs --order and --degree".into()));
                    };
                    let sp = structural_params(&h);
                    let plan = crate::telescope::degree_plan(&sp, r, d)
                        .unwrap_or_else(|_| crate::telescope::forced_plan(&sp, r, d));
                    let opts = SolveOptions {
                        slack: slack.unwrap_or(0),
                        allow_splittable,
                    };
                    match solve_structured_with(&h, &plan, &opts)? {
                        StructuredOutcome::Found(l, c) => Ok(format!(
                            "# order {} degree {}\n{}",
                            l.order(),
                            l.degree(),
                            termio::serialize_pair(&l, &c)
                        )),
                        _ => Err(Failure::NotFound(format!("no telescoper at (r, d) = ({r}, {d})"))),
                    }
                }
                Mode::Zeilberger => {
                    let opts = SolveOptions {
                        slack: slack.unwrap_or(SolveOptions::default().slack),
                        allow_splittable,
                    };
                    let rmax = order.unwrap_or(rmax);
                    match solve_zeilberger(&h, rmax, &opts)? {
                        Some(z) => Ok(format!(
                            "# order {} degree {}\n{}",
                            z.telescoper.order(),
                            z.telescoper.degree(),
                            termio::serialize_pair(&z.telescoper, &z.certificate)
                        )),
                        None => Err(Failure::NotFound(format!("no telescoper of order <= {rmax}"))),
                    }
                }
            }
        }
        Command::Region {
            term,
            rmax,
            dmax,
            slack,
            csv,
            allow_splittable,
        } => {
            let h = load_term(&term)?;
            let opts = SolveOptions {
                slack,
                allow_splittable,
            };
            let region = region_scan_with(&h, rmax, dmax, &opts, &mut |r| {
                let _ = writeln!(err, "row r={r} done");
            })?;
            if !region.unverified.is_empty() {
                return Err(Failure::Input(format!("unverified cells: {:?}", region.unverified)));
            }
            csv_out(termio::region_csv(region.cells())?, &csv)
        }
        Command::Verify { term, operator } => {
            let h = load_term(&term)?;
            let (l, c) = termio::parse_operator(&read(&operator)?).map_err(|e| located(&operator, e))?;
            let c = c.ok_or_else(|| Failure::Input("operator file has no certificate (cnum/cden)".into()))?;
            if verify_pair(&h, &l, &c) {
                Ok("valid\n".into())
            } else {
                Err(Failure::NotFound("invalid".into()))
            }
        }
        Command::Cost { term, window, kappa } => {
            let sp = structural_params(&load_term(&term)?);
            let model = CostModel::nonrational(sp).with_kappa(parse_kappa(&kappa)?);
            let rows: Vec<_> = table(&CurveSpec::nonrational(&sp), &window)?
                .into_iter()
                .map(|(r, d)| (r, d, cost(&model, r, d)))
                .collect();
            csv_out(termio::cost_csv(&rows)?, &window.csv)
        }
        Command::Suggest {
            input,
            rmax,
            kappa,
            rule,
            rational,
        } => {
            let kappa = parse_kappa(&kappa)?;
            let (model, curve) = if rational {
                let params = to_rational_params(&load_rational(&input)?);
                (CostModel::rational().with_kappa(kappa), CurveSpec::rational(&params))
            } else {
                let sp = structural_params(&load_term(&input)?);
                (CostModel::nonrational(sp).with_kappa(kappa), CurveSpec::nonrational(&sp))
            };
            let rule = match rule {
                Rule::Bound => DegreeRule::BoundPlusOne,
                Rule::Integer => DegreeRule::Integer,
            };
            let s = suggest_order(&model, &curve, rmax, rule)?;
            Ok(format!("r={} d={} cost={}\n", s.r, s.d, s.cost))
        }
        Command::RatCurve { input, window } => {
            let curve = CurveSpec::rational(&to_rational_params(&load_rational(&input)?));
            csv_out(termio::curve_csv(&table(&curve, &window)?)?, &window.csv)
        }
        Command::RatTelescope { input, order, degree } => {
            let inp = load_rational(&input)?;
            let d = match degree {
                Some(d) => d,
                None => CurveSpec::rational(&to_rational_params(&inp)).dmin(order)?,
            };
            match solve_rational(&inp, order, d)? {
                Some(l) => Ok(format!(
                    "# order {} degree {}\n{}",
                    l.order(),
                    l.degree(),
                    termio::serialize_telescoper(&l)
                )),
                None => Err(Failure::NotFound(format!("no telescoper at (r, d) = ({order}, {d})"))),
            }
        }
        Command::RatVerify { input, operator } => {
            let inp = load_rational(&input)?;
            let l = termio::parse_telescoper(&read(&operator)?).map_err(|e| located(&operator, e))?;
            if verify_rational(&inp, l.coeffs()) {
                Ok("valid\n".into())
            } else {
                Err(Failure::NotFound("invalid".into()))
            }
        }
        Command::Decompose { input } => {
            let text = read(&input)?;
            let f = termio::parse_rational(&text).map_err(|e| located(&input, e))?;
            let inp = match &f.g {
                Some(g) => decompose_with_g(&f.p, &f.q, g)?,
                None => decompose(&f.p, &f.q)?,
            };
            Ok(termio::serialize_decomp(&inp))
        }
        Command::Lift { operator, a, b } => {
            let l = termio::parse_telescoper(&read(&operator)?).map_err(|e| located(&operator, e))?;
            let (a, b) = (parse_poly_n(&a)?, parse_poly_n(&b)?);
            if a.degree().is_none() || b.degree().is_none() {
                return Err(Failure::Input("a and b must be nonzero".into()));
            }
            Ok(termio::serialize_telescoper(&lift(&l, &a, &b)))
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    init_threads();
    match execute(cli.cmd, err) {
        Ok(text) => {
            let written = match &cli.out {
                Some(p) => write_file(p, &text),
                None => out.write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
            };
            match written {
                Ok(()) => 0,
                Err(Failure::Input(m) | Failure::NotFound(m)) => {
                    let _ = writeln!(err, "error: {m}");
                    2
                }
            }
        }
        Err(Failure::NotFound(m)) => {
            let _ = writeln!(err, "{m}");
            1
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}
