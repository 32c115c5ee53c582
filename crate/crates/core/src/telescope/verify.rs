use num_traits::Zero;

use super::{Certificate, Telescoper};
use crate::exactmath::{PolyN, PolyNK};
use crate::hyperterm::{sigma_k, sigma_n, ProperTerm};

/// Checks `sum_i l_i S_n^i(h) / h = S_k(C) sigma_k - C` by cross
/// multiplication, without any gcd computation.
pub fn verify_pair(h: &ProperTerm, l: &Telescoper, c: &Certificate) -> bool {
    verify_coeffs(h, l.coeffs(), c)
}

pub(crate) fn verify_coeffs(h: &ProperTerm, coeffs: &[PolyN], c: &Certificate) -> bool {
    let sn = sigma_n(h);
    let sk = sigma_k(h);
    let r = coeffs.len().saturating_sub(1);
    let (nn, dn) = (sn.num(), sn.den());
    let nn_t: Vec<PolyNK> = (0..r).map(|t| nn.shift(t as i64, 0)).collect();
    let dn_t: Vec<PolyNK> = (0..r).map(|t| dn.shift(t as i64, 0)).collect();

    // suffix[i] = prod_{t >= i} Dn(n + t)
    let mut suffix = vec![PolyNK::one(); r + 1];
    for t in (0..r).rev() {
        suffix[t] = &suffix[t + 1] * &dn_t[t];
    }
    let mut lhs_num = PolyNK::zero();
    let mut prefix = PolyNK::one();
    for (i, li) in coeffs.iter().enumerate() {
        if !li.is_zero() {
            let term = &(&PolyNK::from_poly_n(li) * &prefix) * &suffix[i];
            lhs_num = &lhs_num + &term;
        }
        if i < r {
            prefix = &prefix * &nn_t[i];
        }
    }
    let lhs_den = &suffix[0];

    let (cn, cd) = (c.value.num(), c.value.den());
    let (cn1, cd1) = (cn.shift(0, 1), cd.shift(0, 1));
    let rhs_num = &(&(&cn1 * sk.num()) * cd) - &(&(cn * &cd1) * sk.den());
    let rhs_den = &(&cd1 * sk.den()) * cd;
    &lhs_num * &rhs_den == &rhs_num * lhs_den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rint, RatFuncNK};
    use crate::hyperterm::tests_support::power_of_two;

    #[test]
    fn geometric_pair() {
        let h = power_of_two();
        let l = Telescoper::new(vec![PolyN::constant(rint(1))]).unwrap();
        let one = Certificate {
            value: RatFuncNK::one(),
        };
        let zero = Certificate {
            value: RatFuncNK::zero(),
        };
        assert!(verify_pair(&h, &l, &one));
        assert!(!verify_pair(&h, &l, &zero));
    }
}
