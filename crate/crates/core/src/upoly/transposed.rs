//! Transposed operations: extension of linearly recurrent sequences (the
//! transpose of Euclidean remainder), transposed differentiation and the
//! middle product (transposed multiplication).

use super::{inv_series, mul_trunc, DensePoly};
use crate::error::{Error, Result};
use crate::field::Field;

/// First `t` terms of the sequence with initial terms `u` and minimal
/// polynomial `s` (monic, `deg s = u.len()`), i.e. `sum_j s_j v_{n+j} = 0`.
///
/// The generating series is `N / rev(s)` with `N = u * rev(s) mod x^k`,
/// so one series inversion and one product suffice.
pub fn tmod_extend<F: Field>(f: &F, u: &[F::Elem], s: &DensePoly<F::Elem>, t: usize) -> Result<Vec<F::Elem>> {
    let k = s.degree().ok_or(Error::DivisionByZeroPoly)?;
    if !s.is_monic(f) {
        return Err(Error::NotMonic);
    }
    if u.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: u.len(),
        });
    }
    if t < k {
        return Err(Error::LengthMismatch { expected: k, got: t });
    }
    if t == k {
        return Ok(u.to_vec());
    }
    let rev: Vec<F::Elem> = s.coeffs().iter().rev().cloned().collect();
    let inv = inv_series(f, &rev, t)?;
    Ok(tmod_extend_with(f, u, &rev, &inv, t))
}

/// [`tmod_extend`] with `rev(s)` and at least `t` terms of `1/rev(s)` supplied.
pub(crate) fn tmod_extend_with<F: Field>(
    f: &F,
    u: &[F::Elem],
    rev_s: &[F::Elem],
    rev_inv: &[F::Elem],
    t: usize,
) -> Vec<F::Elem> {
    let k = u.len();
    if t <= k {
        return u[..t].to_vec();
    }
    let numer = mul_trunc(f, u, rev_s, k);
    let mut v = mul_trunc(f, &numer, &rev_inv[..t], t);
    v[..k].clone_from_slice(u);
    v
}

/// Transposed `lambda`-th derivative: `v_i = i(i-1)...(i-lambda+1) u_{i-lambda}`,
/// with `v_0 = ... = v_{lambda-1} = 0`; output length `u.len() + lambda`.
pub fn tdiff<F: Field>(f: &F, u: &[F::Elem], lambda: usize) -> Vec<F::Elem> {
    if lambda == 0 {
        return u.to_vec();
    }
    let t = u.len() + lambda;
    let c = super::falling_factorials(f, t, lambda);
    let mut v = vec![f.zero(); t];
    for i in lambda..t {
        v[i] = f.mul(&c[i], &u[i - lambda]);
    }
    v
}

/// Transposed multiplication by `p`: `r_i = sum_j p_j w_{i+j}` for `i < n`.
pub fn tmul<F: Field>(f: &F, w: &[F::Elem], p: &DensePoly<F::Elem>, n: usize) -> Result<Vec<F::Elem>> {
    let m = match p.degree() {
        None => return Ok(vec![f.zero(); n]),
        Some(m) => m,
    };
    if w.len() < n + m {
        return Err(Error::LengthMismatch {
            expected: n + m,
            got: w.len(),
        });
    }
    Ok(middle_product(f, p.coeffs(), &w[..n + m], n))
}

/// `r_i = sum_j p_j w_{i+j}` for `i < n`, where `w.len() >= n + p.len() - 1`.
pub(crate) fn middle_product<F: Field>(f: &F, p: &[F::Elem], w: &[F::Elem], n: usize) -> Vec<F::Elem> {
    if p.is_empty() || n == 0 {
        return vec![f.zero(); n];
    }
    let m = p.len() - 1;
    let rev: Vec<F::Elem> = p.iter().rev().cloned().collect();
    let full = f.poly_mul(&rev, &w[..n + m]);
    (0..n).map(|i| full[i + m].clone()).collect()
}
