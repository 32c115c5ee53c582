//! Modular shortcuts for sparse integer systems: a rank test modulo one prime
//! and p-adic lifting (Dixon) of a kernel vector. A positive answer is always
//! exact; callers fall back to [`super::elim::echelon`] otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::elim::{entry, normalize_vector, SparseRow};

pub const MOD_P: u64 = 2_147_483_647;

/// Lifting steps before giving up, about 60k bits of output.
const MAX_STEPS: usize = 2048;

fn residue(v: &BigInt) -> u64 {
    v.mod_floor(&BigInt::from(MOD_P))
        .try_into()
        .expect("residue fits in u64")
}

fn inv(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, MOD_P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % MOD_P;
        }
        base = base * base % MOD_P;
        e >>= 1;
    }
    acc
}

/// `row - f * prow` modulo the prime.
fn axpy(row: &SparseRow<u64>, f: u64, prow: &SparseRow<u64>) -> SparseRow<u64> {
    let mut out = Vec::with_capacity(row.len() + prow.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < prow.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = prow.get(j).map_or(usize::MAX, |e| e.0);
        let sub = |v: u64| (MOD_P - f * v % MOD_P) % MOD_P;
        let (c, v) = if ci == cj {
            i += 1;
            j += 1;
            (ci, (row[i - 1].1 + sub(prow[j - 1].1)) % MOD_P)
        } else if ci < cj {
            i += 1;
            (ci, row[i - 1].1)
        } else {
            j += 1;
            (cj, sub(prow[j - 1].1))
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

/// Sparse LU modulo the prime, recorded so that right-hand sides can be
/// pushed through the same row operations.
struct Factored {
    /// `(column, row id, reduced row, inverse pivot)`.
    pivots: Vec<(usize, usize, SparseRow<u64>, u64)>,
    /// `(pivot step, target row id, factor)`.
    ops: Vec<(usize, usize, u64)>,
    free: Vec<usize>,
    ncols: usize,
}

fn factor(rows: &[SparseRow<BigInt>], ncols: usize, col_order: &[usize], record: bool) -> Factored {
    let mut live: Vec<(usize, SparseRow<u64>)> = rows
        .iter()
        .enumerate()
        .map(|(id, r)| {
            let r: SparseRow<u64> = r.iter().map(|(c, v)| (*c, residue(v))).filter(|e| e.1 != 0).collect();
            (id, r)
        })
        .filter(|r| !r.1.is_empty())
        .collect();
    let mut pivots = Vec::new();
    let mut ops = Vec::new();
    let mut free = Vec::new();
    for &col in col_order {
        let best = live
            .iter()
            .enumerate()
            .filter(|(_, r)| entry(&r.1, col).is_some())
            .min_by_key(|(_, r)| (r.1.len(), r.0))
            .map(|(i, _)| i);
        let Some(pos) = best else {
            free.push(col);
            continue;
        };
        let (pid, prow) = live.swap_remove(pos);
        let pinv = inv(*entry(&prow, col).unwrap());
        let step = pivots.len();
        for (id, row) in live.iter_mut() {
            let Some(&m) = entry(row, col) else {
                continue;
            };
            let f = m * pinv % MOD_P;
            *row = axpy(row, f, &prow);
            if record {
                ops.push((step, *id, f));
            }
        }
        live.retain(|r| !r.1.is_empty());
        pivots.push((col, pid, prow, pinv));
    }
    Factored {
        pivots,
        ops,
        free,
        ncols,
    }
}

impl Factored {
    /// A solution of the pivot rows with zeros in the free columns.
    fn solve(&self, rhs: &mut [u64]) -> Vec<u64> {
        for &(step, target, f) in &self.ops {
            let src = rhs[self.pivots[step].1];
            rhs[target] = (rhs[target] + MOD_P - f * src % MOD_P) % MOD_P;
        }
        let mut x = vec![0u64; self.ncols];
        for (col, rid, row, pinv) in self.pivots.iter().rev() {
            let mut s = rhs[*rid];
            for (j, v) in row {
                if j != col && x[*j] != 0 {
                    s = (s + MOD_P - v * x[*j] % MOD_P) % MOD_P;
                }
            }
            x[*col] = s * pinv % MOD_P;
        }
        x
    }
}

/// `true` if the matrix has full column rank modulo [`MOD_P`], which implies
/// full column rank over `Q`. `false` is inconclusive.
pub fn full_column_rank_mod_p(rows: &[SparseRow<BigInt>], ncols: usize) -> bool {
    if rows.len() < ncols {
        return false;
    }
    let order: Vec<usize> = (0..ncols).collect();
    factor(rows, ncols, &order, false).free.is_empty()
}

/// `n/d` with `n/d = a mod m` and `|n|, d <= sqrt(m/2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        r1 = -r1;
        t1 = -t1;
    }
    r1.gcd(&t1).is_one().then_some((r1, t1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModularKernel {
    /// No nonzero kernel vector exists.
    FullRank,
    /// Primitive integer kernel vector with a nonzero entry in `col`.
    Found { col: usize, vector: Vec<BigInt> },
    Inconclusive,
}

/// Looks for a kernel vector that is one in the first free column (in
/// `col_order`) accepted by `wanted` and zero in the other free columns. The
/// result is checked against the full system before it is returned.
pub fn modular_kernel(
    rows: &[SparseRow<BigInt>],
    ncols: usize,
    col_order: &[usize],
    wanted: impl Fn(usize) -> bool,
) -> ModularKernel {
    let fz = factor(rows, ncols, col_order, true);
    if fz.free.is_empty() {
        return ModularKernel::FullRank;
    }
    let Some(f) = fz.free.iter().copied().find(|&c| wanted(c)) else {
        return ModularKernel::Inconclusive;
    };
    let p = BigInt::from(MOD_P);
    let mut resid: Vec<BigInt> = rows
        .iter()
        .map(|r| entry(r, f).map_or_else(BigInt::zero, |v| -v))
        .collect();
    let mut acc = vec![BigInt::zero(); ncols];
    let mut modulus = BigInt::one();
    let mut next_check = 8;
    for step in 1..=MAX_STEPS {
        let mut c: Vec<u64> = resid.iter().map(residue).collect();
        let x = fz.solve(&mut c);
        for (i, row) in rows.iter().enumerate() {
            let mut s = std::mem::take(&mut resid[i]);
            for (j, v) in row {
                if x[*j] != 0 {
                    s -= v * x[*j];
                }
            }
            let (q, r) = s.div_rem(&p);
            if !r.is_zero() {
                return ModularKernel::Inconclusive;
            }
            resid[i] = q;
        }
        for (a, xi) in acc.iter_mut().zip(&x) {
            if *xi != 0 {
                *a += &modulus * xi;
            }
        }
        modulus *= &p;
        if step == next_check {
            next_check *= 2;
            if let Some(v) = reconstruct(rows, &acc, &modulus, f) {
                return ModularKernel::Found { col: f, vector: v };
            }
        }
    }
    ModularKernel::Inconclusive
}

fn reconstruct(rows: &[SparseRow<BigInt>], acc: &[BigInt], m: &BigInt, f: usize) -> Option<Vec<BigInt>> {
    let mut den = BigInt::one();
    let mut parts: Vec<(BigInt, BigInt)> = Vec::with_capacity(acc.len());
    for a in acc {
        if a.is_zero() {
            parts.push((BigInt::zero(), BigInt::one()));
            continue;
        }
        let (n, d) = rational_reconstruction(&(a * &den).mod_floor(m), m)?;
        den *= &d;
        parts.push((n, den.clone()));
    }
    let mut w: Vec<BigInt> = parts.into_iter().map(|(n, d)| n * (&den / d)).collect();
    w[f] = den;
    let ok = rows.iter().all(|row| {
        row.iter()
            .fold(BigInt::zero(), |s, (j, v)| if w[*j].is_zero() { s } else { s + v * &w[*j] })
            .is_zero()
    });
    if !ok {
        return None;
    }
    normalize_vector(&mut w);
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::elim::echelon;
    use proptest::prelude::*;

    fn row(vals: &[i64]) -> SparseRow<BigInt> {
        vals.iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(c, v)| (c, BigInt::from(*v)))
            .collect()
    }

    #[test]
    fn rank_filter() {
        assert!(full_column_rank_mod_p(&[row(&[1, 2]), row(&[3, 4]), row(&[5, 6])], 2));
        assert!(!full_column_rank_mod_p(&[row(&[1, 2]), row(&[2, 4]), row(&[0, 0])], 2));
        // independent over Q, dependent modulo the prime
        let p = MOD_P as i64;
        assert!(!full_column_rank_mod_p(&[row(&[1, 1]), row(&[1, 1 + p])], 2));
        assert!(!full_column_rank_mod_p(&[row(&[1, 0])], 2));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(MOD_P) * BigInt::from(MOD_P);
        let inv3 = BigInt::from(3).modpow(&(BigInt::from(MOD_P) - 2), &BigInt::from(MOD_P));
        // 2/3 modulo p lifts uniquely; check via the defining congruence
        let a = (BigInt::from(2) * inv3).mod_floor(&BigInt::from(MOD_P));
        let (n, d) = rational_reconstruction(&a, &BigInt::from(MOD_P)).unwrap();
        assert_eq!((n, d), (BigInt::from(2), BigInt::from(3)));
        assert_eq!(
            rational_reconstruction(&BigInt::from(-7), &m),
            Some((BigInt::from(-7), BigInt::one()))
        );
    }

    #[test]
    fn large_entries_need_lifting() {
        // kernel spanned by (b, -a) with a, b far above the prime
        let a: BigInt = BigInt::from(MOD_P).pow(3u32) + 5;
        let b: BigInt = BigInt::from(MOD_P).pow(2u32) * 7 + 11;
        let rows = vec![vec![(0, a.clone()), (1, b.clone())], vec![(0, a.clone() * 2), (1, b.clone() * 2)]];
        match modular_kernel(&rows, 2, &[0, 1], |_| true) {
            ModularKernel::Found { col: 1, vector } => {
                let mut want = vec![-b, a];
                normalize_vector(&mut want);
                assert_eq!(vector, want);
            }
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn agrees_with_bareiss(
            m in prop::collection::vec(prop::collection::vec(-20i64..=20, 6), 1..6),
        ) {
            let rows: Vec<_> = m.iter().map(|r| row(r)).collect();
            let order: Vec<usize> = (0..6).collect();
            let e = echelon(rows.clone(), 6, &order);
            match modular_kernel(&rows, 6, &order, |_| true) {
                ModularKernel::FullRank => prop_assert!(e.free.is_empty()),
                ModularKernel::Found { col, vector } => {
                    prop_assert_eq!(Some(&col), e.free.first());
                    prop_assert_eq!(vector, e.kernel_vector(col));
                }
                ModularKernel::Inconclusive => {}
            }
        }
    }
}
