//! Dense univariate polynomials over any [`Field`].
//!
//! All functions take the coefficient field descriptor as first argument.
//! Multiplication goes through [`Field::poly_mul`], so every routine here
//! inherits the field's fast product (transform-based over F_p, Kronecker
//! packing over extensions).

mod kronecker;
mod squarefree;
mod transposed;

pub use kronecker::{kronecker_mul, BivPoly};
pub use squarefree::{crt_combine, gcd, xgcd, yun_squarefree, SquarefreeDecomposition};
pub use transposed::{tdiff, tmod_extend, tmul};
pub(crate) use transposed::{middle_product, tmod_extend_with};

use num_bigint::BigUint;

use crate::error::{require_char, Error, Hypothesis, Result};
use crate::field::Field;

/// Below these sizes division falls back to the classical loop.
const DIVISION_CUTOFF: usize = 32;

/// Ascending coefficients, no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensePoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> DensePoly<E> {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        trim(f, &mut coeffs);
        DensePoly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    /// The polynomial `x`.
    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        DensePoly {
            coeffs: vec![f.zero(), f.one()],
        }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (`degree + 1`, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.leading().is_some_and(|c| f.is_one(c))
    }
}

pub(crate) fn trim<F: Field>(f: &F, v: &mut Vec<F::Elem>) {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
}


pub fn add<F: Field>(f: &F, a: &DensePoly<F::Elem>, b: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
    DensePoly::from_coeffs(f, add_slices(f, &a.coeffs, &b.coeffs))
}

pub fn sub<F: Field>(f: &F, a: &DensePoly<F::Elem>, b: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
    DensePoly::from_coeffs(f, sub_slices(f, &a.coeffs, &b.coeffs))
}

pub fn neg<F: Field>(f: &F, a: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
    DensePoly {
        coeffs: a.coeffs.iter().map(|c| f.neg(c)).collect(),
    }
}

pub fn scale<F: Field>(f: &F, a: &DensePoly<F::Elem>, c: &F::Elem) -> DensePoly<F::Elem> {
    DensePoly::from_coeffs(f, a.coeffs.iter().map(|x| f.mul(x, c)).collect())
}

pub(crate) fn add_slices<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = f.add(o, s);
    }
    out
}

pub(crate) fn sub_slices<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), f.zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o = f.sub(o, s);
    }
    out
}

/// Exact product.
pub fn mul<F: Field>(f: &F, a: &DensePoly<F::Elem>, b: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
    DensePoly::from_coeffs(f, f.poly_mul(&a.coeffs, &b.coeffs))
}

/// First `n` coefficients of `a * b` (zero padded to exactly `n`).
pub fn mul_trunc<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let a = &a[..a.len().min(n)];
    let b = &b[..b.len().min(n)];
    let mut out = f.poly_mul(a, b);
    out.resize(n, f.zero());
    out
}

/// `G` with `F * G = 1 mod x^n`, by Newton iteration.
pub fn inv_mod_xn<F: Field>(f: &F, a: &DensePoly<F::Elem>, n: usize) -> Result<DensePoly<F::Elem>> {
    Ok(DensePoly::from_coeffs(f, inv_series(f, &a.coeffs, n)?))
}

/// Power-series inverse to precision `n`, as exactly `n` coefficients.
pub(crate) fn inv_series<F: Field>(f: &F, a: &[F::Elem], n: usize) -> Result<Vec<F::Elem>> {
    let a0 = a.first().cloned().unwrap_or_else(|| f.zero());
    let g0 = f.inv(&a0).map_err(|_| Error::NotInvertible)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut g = vec![g0];
    let mut prec = 1;
    while prec < n {
        let next = (2 * prec).min(n);
        // e = a*g mod x^next has e_0 = 1 and e_1..e_{prec-1} = 0.
        let e = mul_trunc(f, a, &g, next);
        let tail: Vec<F::Elem> = e[prec..].iter().map(|c| f.neg(c)).collect();
        let corr = mul_trunc(f, &g, &tail, next - prec);
        g.extend(corr);
        prec = next;
    }
    Ok(g)
}

fn reversed<E: Clone>(v: &[E], len: usize, zero: &E) -> Vec<E> {
    (0..len)
        .map(|i| v.get(len - 1 - i).cloned().unwrap_or_else(|| zero.clone()))
        .collect()
}

/// Quotient and remainder: `a = q*b + r` with `deg r < deg b`.
pub fn divmod<F: Field>(
    f: &F,
    a: &DensePoly<F::Elem>,
    b: &DensePoly<F::Elem>,
) -> Result<(DensePoly<F::Elem>, DensePoly<F::Elem>)> {
    let db = b.degree().ok_or(Error::DivisionByZeroPoly)?;
    let lc_inv = f.inv(b.leading().expect("nonzero"))?;
    if a.len() <= db {
        return Ok((DensePoly::zero(), a.clone()));
    }
    let monic: Vec<F::Elem> = if f.is_one(&lc_inv) {
        b.coeffs.clone()
    } else {
        b.coeffs.iter().map(|c| f.mul(c, &lc_inv)).collect()
    };
    let qlen = a.len() - db;
    let (mut q, r) = if db < DIVISION_CUTOFF || qlen < DIVISION_CUTOFF {
        long_division(f, &a.coeffs, &monic)
    } else {
        let rev_inv = inv_series(f, &reversed(&monic, db + 1, &f.zero()), qlen)?;
        fast_division(f, &a.coeffs, &monic, &rev_inv)
    };
    if !f.is_one(&lc_inv) {
        for c in q.iter_mut() {
            *c = f.mul(c, &lc_inv);
        }
    }
    Ok((DensePoly::from_coeffs(f, q), DensePoly::from_coeffs(f, r)))
}

pub fn rem<F: Field>(f: &F, a: &DensePoly<F::Elem>, b: &DensePoly<F::Elem>) -> Result<DensePoly<F::Elem>> {
    Ok(divmod(f, a, b)?.1)
}

/// Division by a monic modulus, returning unnormalized `(q, r)` with
/// `r` of length exactly `deg m`.
fn long_division<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= dm {
        r.resize(dm, f.zero());
        return (Vec::new(), r);
    }
    let qlen = r.len() - dm;
    let mut q = vec![f.zero(); qlen];
    for i in (0..qlen).rev() {
        let c = r[i + dm].clone();
        if f.is_zero(&c) {
            continue;
        }
        for j in 0..dm {
            let t = f.mul(&c, &m[j]);
            r[i + j] = f.sub(&r[i + j], &t);
        }
        q[i] = c;
    }
    r.truncate(dm);
    (q, r)
}

/// `rev_inv` must hold at least `a.len() - deg m` terms of `1/rev(m)`.
fn fast_division<F: Field>(
    f: &F,
    a: &[F::Elem],
    m: &[F::Elem],
    rev_inv: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let dm = m.len() - 1;
    if a.len() <= dm {
        let mut r = a.to_vec();
        r.resize(dm, f.zero());
        return (Vec::new(), r);
    }
    let qlen = a.len() - dm;
    let zero = f.zero();
    let rev_a = reversed(a, a.len(), &zero);
    let rev_q = mul_trunc(f, &rev_a[..qlen], &rev_inv[..qlen], qlen);
    let q = reversed(&rev_q, qlen, &zero);
    let qm = mul_trunc(f, &q, m, dm);
    let r = (0..dm).map(|i| f.sub(&a[i], &qm[i])).collect();
    (q, r)
}

/// A monic modulus with its reversed inverse precomputed, for repeated
/// reductions of inputs of length up to `2 * deg`.
#[derive(Clone, Debug)]
pub struct PolyModulus<F: Field> {
    modulus: Vec<F::Elem>,
    rev_inv: Vec<F::Elem>,
}

impl<F: Field> PolyModulus<F> {
    pub fn new(f: &F, m: &DensePoly<F::Elem>) -> Result<Self> {
        let d = m.degree().ok_or(Error::DivisionByZeroPoly)?;
        if !m.is_monic(f) {
            return Err(Error::NotMonic);
        }
        let rev_inv = if d >= DIVISION_CUTOFF {
            inv_series(f, &reversed(&m.coeffs, d + 1, &f.zero()), d)?
        } else {
            Vec::new()
        };
        Ok(PolyModulus {
            modulus: m.coeffs.clone(),
            rev_inv,
        })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    /// Remainder as exactly `deg` coefficients (not trimmed).
    pub fn reduce_slice(&self, f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
        let d = self.degree();
        if a.len() <= d {
            let mut r = a.to_vec();
            r.resize(d, f.zero());
            return r;
        }
        if d < DIVISION_CUTOFF || a.len() - d < DIVISION_CUTOFF {
            return long_division(f, a, &self.modulus).1;
        }
        if a.len() - d <= self.rev_inv.len() {
            return fast_division(f, a, &self.modulus, &self.rev_inv).1;
        }
        // Long inputs: fold from the top, one chunk of d coefficients at a time.
        let mut r: Vec<F::Elem> = Vec::new();
        let mut pos = a.len();
        while pos > 0 {
            let lo = pos.saturating_sub(d);
            let mut chunk = a[lo..pos].to_vec();
            chunk.extend(r);
            r = fast_division(f, &chunk, &self.modulus, &self.rev_inv).1;
            pos = lo;
        }
        r
    }

    pub fn reduce(&self, f: &F, a: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
        DensePoly::from_coeffs(f, self.reduce_slice(f, a.coeffs()))
    }

    pub fn mul(&self, f: &F, a: &DensePoly<F::Elem>, b: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
        DensePoly::from_coeffs(f, self.reduce_slice(f, &f.poly_mul(a.coeffs(), b.coeffs())))
    }
}

/// `base^e mod m` by square and multiply.
pub fn pow_mod<F: Field>(
    f: &F,
    base: &DensePoly<F::Elem>,
    e: &BigUint,
    m: &PolyModulus<F>,
) -> DensePoly<F::Elem> {
    let b = m.reduce(f, base);
    let mut acc = m.reduce(f, &DensePoly::one(f));
    for i in (0..e.bits()).rev() {
        acc = m.mul(f, &acc, &acc);
        if e.bit(i) {
            acc = m.mul(f, &acc, &b);
        }
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
    let coeffs = a
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
        .collect();
    DensePoly::from_coeffs(f, coeffs)
}

/// Horner evaluation.
pub fn eval<F: Field>(f: &F, a: &DensePoly<F::Elem>, x: &F::Elem) -> F::Elem {
    a.coeffs
        .iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Factorials `0!, ..., (n-1)!` and their inverses; needs `char >= n`.
pub(crate) fn factorials<F: Field>(f: &F, n: usize) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let mut fact = Vec::with_capacity(n);
    let mut acc = f.one();
    for i in 0..n {
        if i > 0 {
            acc = f.mul(&acc, &f.from_u64(i as u64));
        }
        fact.push(acc.clone());
    }
    let mut inv = vec![f.zero(); n];
    if n > 0 {
        let mut cur = f.inv(&fact[n - 1]).expect("characteristic checked by caller");
        for i in (0..n).rev() {
            inv[i] = cur.clone();
            if i > 0 {
                cur = f.mul(&cur, &f.from_u64(i as u64));
            }
        }
    }
    (fact, inv)
}

/// `c_i = i (i-1) ... (i-lambda+1)` for `i < n`, valid in any characteristic.
pub(crate) fn falling_factorials<F: Field>(f: &F, n: usize, lambda: usize) -> Vec<F::Elem> {
    let mut c = vec![f.zero(); n];
    if lambda == 0 {
        return vec![f.one(); n];
    }
    if n <= lambda {
        return c;
    }
    if f.characteristic() >= n as u64 {
        let (fact, inv_fact) = factorials(f, n);
        for i in lambda..n {
            c[i] = f.mul(&fact[i], &inv_fact[i - lambda]);
        }
        return c;
    }
    // Sliding window over the factors i-lambda+1..=i, tracking the ones divisible by p.
    let p = f.characteristic();
    let mut zeros = 0usize;
    let mut prod = f.one();
    for k in 1..=lambda as u64 {
        if k % p == 0 {
            zeros += 1;
        } else {
            prod = f.mul(&prod, &f.from_u64(k));
        }
    }
    for i in lambda..n {
        if i > lambda {
            let (add, drop) = (i as u64, (i - lambda) as u64);
            if add % p == 0 {
                zeros += 1;
            } else {
                prod = f.mul(&prod, &f.from_u64(add));
            }
            if drop % p == 0 {
                zeros -= 1;
            } else {
                prod = f.mul(&prod, &f.inv(&f.from_u64(drop)).expect("unit"));
            }
        }
        if zeros == 0 {
            c[i] = prod.clone();
        }
    }
    c
}

/// Coefficients of the `lambda`-th derivative of `a` (length `a.len() - lambda`).
pub(crate) fn nth_derivative_slice<F: Field>(f: &F, a: &[F::Elem], lambda: usize) -> Vec<F::Elem> {
    if a.len() <= lambda {
        return Vec::new();
    }
    let c = falling_factorials(f, a.len(), lambda);
    (lambda..a.len()).map(|i| f.mul(&c[i], &a[i])).collect()
}

/// `P(x + a)` in one convolution; needs `char > deg P`.
pub fn taylor_shift<F: Field>(f: &F, p: &DensePoly<F::Elem>, a: &F::Elem) -> Result<DensePoly<F::Elem>> {
    Ok(DensePoly::from_coeffs(f, taylor_shift_slice(f, p.coeffs(), a)?))
}

pub(crate) fn taylor_shift_slice<F: Field>(f: &F, p: &[F::Elem], a: &F::Elem) -> Result<Vec<F::Elem>> {
    let n = p.len();
    if n <= 1 || f.is_zero(a) {
        return Ok(p.to_vec());
    }
    require_char(f.characteristic(), n as u64, Hypothesis::H2)?;
    let (fact, inv_fact) = factorials(f, n);
    // c_k k! = sum_i (p_i i!) a^{i-k}/(i-k)!
    let u: Vec<F::Elem> = (0..n).rev().map(|i| f.mul(&p[i], &fact[i])).collect();
    let mut v = Vec::with_capacity(n);
    let mut apow = f.one();
    for j in 0..n {
        v.push(f.mul(&apow, &inv_fact[j]));
        apow = f.mul(&apow, a);
    }
    let w = mul_trunc(f, &u, &v, n);
    Ok((0..n).map(|k| f.mul(&w[n - 1 - k], &inv_fact[k])).collect())
}
