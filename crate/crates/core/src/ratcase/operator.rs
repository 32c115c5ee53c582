use num_traits::Zero;

use crate::exactmath::{Coeff, PolyN, RatFuncN};

/// Coefficients that `S_n` can move past: `S_n c(n) = c(n + 1) S_n`.
pub trait ShiftN: Coeff {
    fn shift_n(&self, t: i64) -> Self;
}

impl ShiftN for PolyN {
    fn shift_n(&self, t: i64) -> Self {
        self.shift_int(t)
    }
}

impl ShiftN for RatFuncN {
    fn shift_n(&self, t: i64) -> Self {
        self.shift(t)
    }
}

/// `sum_i c_i S_n^i`, coefficients indexed by the power of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecOperator<T = PolyN> {
    coeffs: Vec<T>,
}

impl<T: ShiftN> RecOperator<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RecOperator { coeffs }
    }

    pub fn zero() -> Self {
        RecOperator { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `S_n^m`.
    pub fn shift_power(m: usize) -> Self {
        let mut coeffs = vec![T::zero(); m + 1];
        coeffs[m] = T::one();
        RecOperator { coeffs }
    }

    /// `S_n^m - 1`.
    pub fn shift_minus_one(m: usize) -> Self {
        let mut op = Self::shift_power(m);
        op.coeffs[0] = op.coeffs[0].sub_ref(&T::one());
        Self::new(op.coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power of `S_n`; 0 for the zero operator.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i).add_ref(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i).sub_ref(&other.coeff(i))).collect())
    }

    /// Skew product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = a.mul_ref(&b.shift_n(i as i64));
                    out[i + j] = out[i + j].add_ref(&t);
                }
            }
        }
        Self::new(out)
    }

    pub fn map<U: ShiftN>(&self, f: impl Fn(&T) -> U) -> RecOperator<U> {
        RecOperator::new(self.coeffs.iter().map(f).collect())
    }
}

impl RecOperator<PolyN> {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn to_ratfunc(&self) -> RecOperator<RatFuncN> {
        self.map(|c| RatFuncN::from_poly(c.clone()))
    }

    /// Divided by the rational content of its coefficients, with a positive
    /// leading coefficient of the top entry.
    pub fn normalized(&self) -> Self {
        let Some(top) = self.coeffs.last() else {
            return self.clone();
        };
        let all = PolyN::new(self.coeffs.iter().flat_map(|c| c.coeffs().iter().cloned()).collect());
        let mut g = all.content();
        if top.lc() < num_traits::Zero::zero() {
            g = -g;
        }
        self.map(|c| c.div_scalar(&g))
    }
}

/// `(T, R)` with `a = T b + R` and `order(R) < order(b)`.
pub fn right_div_rem(
    a: &RecOperator<RatFuncN>,
    b: &RecOperator<RatFuncN>,
) -> (RecOperator<RatFuncN>, RecOperator<RatFuncN>) {
    assert!(!b.is_zero(), "division by the zero operator");
    let k = b.order();
    let lb = b.coeffs[k].clone();
    let mut rem = a.coeffs.clone();
    let mut quot = vec![RatFuncN::zero(); rem.len().saturating_sub(k)];
    while rem.len() > k {
        let m = rem.len() - 1;
        let s = m - k;
        let t = rem[m].div_exact(&lb.shift(s as i64));
        for (j, bj) in b.coeffs.iter().enumerate() {
            if !bj.is_zero() {
                rem[s + j] = rem[s + j].sub_ref(&t.mul_ref(&bj.shift(s as i64)));
            }
        }
        debug_assert!(rem[m].is_zero());
        quot[s] = t;
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    (RecOperator::new(quot), RecOperator::new(rem))
}

pub fn right_remainder(a: &RecOperator<RatFuncN>, b: &RecOperator<RatFuncN>) -> RecOperator<RatFuncN> {
    right_div_rem(a, b).1
}
