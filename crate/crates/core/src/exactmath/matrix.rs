//! Dense rational matrices and nullspace computations over `Q` and `Q(n)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::elim::{echelon, normalize_vector, SparseRow};
use super::scalar::{denominator_lcm, Rat};
use super::upoly::{PolyN, UPoly};

/// Dense `rows x cols` matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        MatrixQ {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rat::from_integer(1.into()));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Rows scaled to primitive integer sparse rows (same kernel).
    pub(crate) fn integer_rows(&self) -> Vec<SparseRow<BigInt>> {
        (0..self.rows)
            .map(|r| integer_row(self.row(r).iter().enumerate()))
            .collect()
    }
}

/// Scale a sparse rational row to integers.
pub(crate) fn integer_row<'a>(entries: impl Iterator<Item = (usize, &'a Rat)> + Clone) -> SparseRow<BigInt> {
    let den = denominator_lcm(entries.clone().map(|(_, v)| v));
    entries
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.numer() * (&den / v.denom())))
        .collect()
}

pub(crate) fn to_rat_vector(v: Vec<BigInt>) -> Vec<Rat> {
    v.into_iter().map(Rat::from_integer).collect()
}

/// Some nonzero `v` with `M v = 0`, integer entries with content one, or
/// `None` when the kernel is trivial.
pub fn nullspace_vector(m: &MatrixQ) -> Option<Vec<Rat>> {
    let order: Vec<usize> = (0..m.cols()).collect();
    let e = echelon(m.integer_rows(), m.cols(), &order);
    e.free.first().map(|&f| to_rat_vector(e.kernel_vector(f)))
}

/// A basis of the right kernel over `Q`, one vector per free column.
pub fn nullspace_basis(m: &MatrixQ) -> Vec<Vec<Rat>> {
    let order: Vec<usize> = (0..m.cols()).collect();
    let e = echelon(m.integer_rows(), m.cols(), &order);
    e.kernel_basis().into_iter().map(to_rat_vector).collect()
}

/// Integer polynomial rows for elimination over `Z[n]`.
pub(crate) fn poly_rows_to_integer(rows: &[Vec<PolyN>]) -> Vec<SparseRow<UPoly<BigInt>>> {
    rows.iter()
        .map(|row| {
            let den = denominator_lcm(row.iter().flat_map(|p| p.coeffs().iter()));
            row.iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(c, p)| (c, p.map(|v| v.numer() * (&den / v.denom()))))
                .collect()
        })
        .collect()
}

pub(crate) fn integer_poly_vector_to_polyn(mut v: Vec<UPoly<BigInt>>) -> Vec<PolyN> {
    normalize_vector(&mut v);
    v.iter().map(PolyN::from_integer_poly).collect()
}

/// Basis of the right kernel over `Q(n)` of a matrix with polynomial entries.
/// Every returned vector has polynomial entries with content one.
pub fn nullspace_over_ratfunc(rows: &[Vec<PolyN>]) -> Vec<Vec<PolyN>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
    let order: Vec<usize> = (0..ncols).collect();
    let e = echelon(poly_rows_to_integer(rows), ncols, &order);
    e.kernel_basis()
        .into_iter()
        .map(integer_poly_vector_to_polyn)
        .collect()
}
