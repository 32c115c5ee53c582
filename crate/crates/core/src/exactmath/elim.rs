//! Fraction-free (Bareiss) elimination on sparse rows.
//!
//! Rows are updated lazily: a row that has a zero in the pivot column is not
//! touched, it only remembers the pivot that was current when it was last
//! rewritten (`base`). Its true Bareiss value is `stored * prev / base`, and
//! the next real update divides by `base` instead of the previous pivot, which
//! yields exactly the same integer (or polynomial) as the eager scheme.

use super::scalar::{Coeff, Gcd};

/// Sparse row: `(column, value)` pairs sorted by column, no zero values.
pub type SparseRow<T> = Vec<(usize, T)>;

struct LiveRow<T> {
    id: usize,
    entries: SparseRow<T>,
    base: T,
}

/// Row echelon form produced by [`echelon`].
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub ncols: usize,
    /// Pivot column and its (current) pivot row, in elimination order.
    pub pivots: Vec<(usize, SparseRow<T>)>,
    /// Columns without a pivot, in elimination order.
    pub free: Vec<usize>,
}

pub(crate) fn entry<T>(row: &SparseRow<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `(a * x - b * y) / div`, all sparse; `div` may be one.
fn combine<T: Coeff>(
    a: &T,
    x: &SparseRow<T>,
    b: &T,
    y: &SparseRow<T>,
    div: &T,
) -> SparseRow<T> {
    let unit_div = div.is_one();
    let finish = |v: T| if unit_div { v } else { v.div_exact(div) };
    let mut out = Vec::with_capacity(x.len().max(y.len()));
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0);
        let cy = y.get(j).map(|e| e.0);
        let (col, v) = match (cx, cy) {
            (Some(p), Some(q)) if p == q => {
                let v = a.mul_ref(&x[i].1).sub_ref(&b.mul_ref(&y[j].1));
                i += 1;
                j += 1;
                (p, v)
            }
            (Some(p), Some(q)) if p < q => {
                i += 1;
                (p, a.mul_ref(&x[i - 1].1))
            }
            (Some(p), None) => {
                i += 1;
                (p, a.mul_ref(&x[i - 1].1))
            }
            (_, Some(q)) => {
                j += 1;
                (q, b.mul_ref(&y[j - 1].1).neg_ref())
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, finish(v)));
        }
    }
    out
}

/// Bareiss elimination visiting columns in `col_order`. The pivot in each
/// column is the entry of smallest size, ties broken by lowest row index.
pub fn echelon<T: Coeff>(rows: Vec<SparseRow<T>>, ncols: usize, col_order: &[usize]) -> Echelon<T> {
    let mut live: Vec<LiveRow<T>> = rows
        .into_iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .map(|(id, entries)| LiveRow {
            id,
            entries,
            base: T::one(),
        })
        .collect();
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut free = Vec::new();
    for &col in col_order {
        let mut best: Option<(u64, usize, usize)> = None;
        for (pos, row) in live.iter().enumerate() {
            if let Some(v) = entry(&row.entries, col) {
                let key = (v.bits(), row.id, pos);
                if best.as_ref().is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, pos)) = best else {
            free.push(col);
            continue;
        };
        let mut prow = live.swap_remove(pos);
        if prow.base != prev {
            prow.entries = prow
                .entries
                .iter()
                .map(|(c, v)| (*c, v.mul_ref(&prev).div_exact(&prow.base)))
                .collect();
        }
        let p = entry(&prow.entries, col).unwrap().clone();
        for row in live.iter_mut() {
            let Some(m) = entry(&row.entries, col).cloned() else {
                continue;
            };
            row.entries = combine(&p, &row.entries, &m, &prow.entries, &row.base);
            row.base = p.clone();
        }
        live.retain(|r| !r.entries.is_empty());
        // keep the live rows in id order so tie-breaks stay deterministic
        live.sort_by_key(|r| r.id);
        prev = p;
        pivots.push((col, prow.entries));
    }
    Echelon {
        ncols,
        pivots,
        free,
    }
}

impl<T: Gcd> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel vector with a one in column `free_col` (before normalization)
    /// and zeros in the other free columns, scaled to a primitive vector.
    pub fn kernel_vector(&self, free_col: usize) -> Vec<T> {
        let mut x = vec![T::zero(); self.ncols];
        x[free_col] = T::one();
        for (step, (col, row)) in self.pivots.iter().enumerate().rev() {
            let mut t = T::zero();
            let mut s = T::zero();
            for (j, v) in row {
                if *j == *col {
                    s = v.clone();
                } else if !x[*j].is_zero() {
                    t = t.add_ref(&v.mul_ref(&x[*j]));
                }
            }
            if t.is_zero() {
                continue;
            }
            let g = t.gcd_ref(&s);
            let s = s.div_exact(&g);
            let t = t.div_exact(&g);
            if !s.is_one() {
                for v in x.iter_mut().filter(|v| !v.is_zero()) {
                    *v = v.mul_ref(&s);
                }
            }
            x[*col] = t.neg_ref();
            if step % 16 == 0 {
                normalize_vector(&mut x);
            }
        }
        normalize_vector(&mut x);
        x
    }

    /// One kernel vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        self.free.iter().map(|&f| self.kernel_vector(f)).collect()
    }
}

/// Divide by the content and normalize the unit of the first nonzero entry.
pub fn normalize_vector<T: Gcd>(x: &mut [T]) {
    let content = x.iter().fold(T::zero(), |acc, v| acc.gcd_ref(v));
    if content.is_zero() {
        return;
    }
    let first = x.iter().find(|v| !v.is_zero()).unwrap().div_exact(&content);
    let (_, unit) = first.normalize_unit();
    let scale = content.mul_ref(&unit);
    if scale.is_one() {
        return;
    }
    for v in x.iter_mut().filter(|v| !v.is_zero()) {
        *v = v.div_exact(&scale);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn row(vals: &[i64]) -> SparseRow<BigInt> {
        vals.iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(c, v)| (c, BigInt::from(*v)))
            .collect()
    }

    fn apply(rows: &[Vec<i64>], x: &[BigInt]) -> Vec<BigInt> {
        rows.iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| BigInt::from(*a) * b).sum())
            .collect()
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let m = vec![vec![2, 4, -2, 6], vec![1, 3, 1, 1], vec![3, 7, -1, 7]];
        let e = echelon(m.iter().map(|r| row(r)).collect(), 4, &[0, 1, 2, 3]);
        assert_eq!(e.rank(), 2);
        for v in e.kernel_basis() {
            assert!(apply(&m, &v).iter().all(|x| x == &BigInt::from(0)));
            assert!(v.iter().any(|x| x != &BigInt::from(0)));
        }
    }

    #[test]
    fn lazy_rows_match_exact_determinant() {
        // the final pivot of a full-rank square Bareiss run is the determinant
        let m = [vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 5]];
        let e = echelon(m.iter().map(|r| row(r)).collect(), 3, &[0, 1, 2]);
        let last = &e.pivots[2];
        let det = entry(&last.1, last.0).unwrap().clone();
        assert_eq!(det.magnitude(), BigInt::from(27).magnitude());
    }
}
