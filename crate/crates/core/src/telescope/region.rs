use super::gosper::forced_plan;
use super::solve::{solve_structured_with, SolveError, SolveOptions, StructuredOutcome};
use super::verify::verify_pair;
use super::{Certificate, Telescoper};
use crate::hyperterm::{structural_params, ProperTerm};

type Cell = Option<(Telescoper, Certificate)>;

/// Result of an `(r, d)` window scan. A cell is marked when the structured
/// system with all `d_i = d` has a solution with `L != 0` and the pair
/// verifies. Unmarked cells may still admit telescopers with larger
/// certificates.
#[derive(Clone, Debug)]
pub struct Region {
    pub rmax: usize,
    pub dmax: usize,
    pub slack: i64,
    cells: Vec<Vec<Cell>>,
    /// Cells where a solution was found but failed verification. Always
    /// empty unless something is broken.
    pub unverified: Vec<(usize, usize)>,
}

impl Region {
    pub fn is_marked(&self, r: usize, d: usize) -> bool {
        self.pair(r, d).is_some()
    }

    pub fn pair(&self, r: usize, d: usize) -> Option<&(Telescoper, Certificate)> {
        self.cells.get(r)?.get(d)?.as_ref()
    }

    /// `(r, d, marked)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        self.cells.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(d, c)| (r, d, c.is_some()))
        })
    }
}

pub fn region_scan(h: &ProperTerm, rmax: usize, dmax: usize, slack: i64) -> Result<Region, SolveError> {
    let opts = SolveOptions {
        slack,
        allow_splittable: false,
    };
    region_scan_with(h, rmax, dmax, &opts, &mut |_| {})
}

/// As [`region_scan`]; `on_row(r)` is called after row `r` is complete.
pub fn region_scan_with(
    h: &ProperTerm,
    rmax: usize,
    dmax: usize,
    opts: &SolveOptions,
    on_row: &mut dyn FnMut(usize),
) -> Result<Region, SolveError> {
    let sp = structural_params(h);
    let mut cells = Vec::with_capacity(rmax + 1);
    let mut unverified = Vec::new();
    for r in 0..=rmax {
        let cell = |d: usize| -> Result<(usize, Cell, bool), SolveError> {
            let plan = forced_plan(&sp, r, d);
            match solve_structured_with(h, &plan, opts)? {
                StructuredOutcome::Found(l, c) => {
                    let ok = verify_pair(h, &l, &c);
                    Ok((d, ok.then_some((l, c)), !ok))
                }
                _ => Ok((d, None, false)),
            }
        };
        #[cfg(feature = "parallel")]
        let results: Vec<_> = {
            use rayon::prelude::*;
            (0..=dmax).into_par_iter().map(cell).collect::<Result<_, _>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let results: Vec<_> = (0..=dmax).map(cell).collect::<Result<_, _>>()?;
        let mut row = Vec::with_capacity(dmax + 1);
        for (d, pair, failed) in results {
            if failed {
                unverified.push((r, d));
            }
            row.push(pair);
        }
        cells.push(row);
        on_row(r);
    }
    Ok(Region {
        rmax,
        dmax,
        slack: opts.slack,
        cells,
        unverified,
    })
}
