use super::{derivative, divmod, mul, rem, scale, sub, DensePoly};
use crate::error::{require_char, Error, Hypothesis, Result};
use crate::field::Field;

/// `P = lc(P) * prod S_i^i`, parts listed by increasing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition<E> {
    pub parts: Vec<(DensePoly<E>, usize)>,
}

fn make_monic<F: Field>(f: &F, a: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
    match a.leading() {
        Some(lc) if !f.is_one(lc) => {
            let inv = f.inv(lc).expect("nonzero leading coefficient");
            scale(f, a, &inv)
        }
        _ => a.clone(),
    }
}

/// Monic gcd (zero if both inputs are zero), by the Euclidean algorithm.
pub fn gcd<F: Field>(f: &F, a: &DensePoly<F::Elem>, b: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = rem(f, &r0, &r1).expect("nonzero divisor");
        r0 = r1;
        r1 = r;
    }
    make_monic(f, &r0)
}

/// `(g, s, t)` with `s*a + t*b = g`, `g` the monic gcd.
pub fn xgcd<F: Field>(
    f: &F,
    a: &DensePoly<F::Elem>,
    b: &DensePoly<F::Elem>,
) -> (DensePoly<F::Elem>, DensePoly<F::Elem>, DensePoly<F::Elem>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (DensePoly::one(f), DensePoly::zero());
    let (mut t0, mut t1) = (DensePoly::zero(), DensePoly::one(f));
    while !r1.is_zero() {
        let (q, r) = divmod(f, &r0, &r1).expect("nonzero divisor");
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match r0.leading().cloned() {
        Some(lc) if !f.is_one(&lc) => {
            let inv = f.inv(&lc).expect("nonzero");
            (scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv))
        }
        _ => (r0, s0, t0),
    }
}

fn exact_div<F: Field>(f: &F, a: &DensePoly<F::Elem>, b: &DensePoly<F::Elem>) -> DensePoly<F::Elem> {
    let (q, r) = divmod(f, a, b).expect("nonzero divisor");
    debug_assert!(r.is_zero());
    q
}

/// Yun's algorithm; valid when `char > deg P`.
pub fn yun_squarefree<F: Field>(f: &F, p: &DensePoly<F::Elem>) -> Result<SquarefreeDecomposition<F::Elem>> {
    let n = p.degree().ok_or(Error::DivisionByZeroPoly)?;
    require_char(f.characteristic(), n as u64 + 1, Hypothesis::H2)?;
    let p = make_monic(f, p);
    let mut parts = Vec::new();
    if n == 0 {
        return Ok(SquarefreeDecomposition { parts });
    }
    let dp = derivative(f, &p);
    let a0 = gcd(f, &p, &dp);
    let mut b = exact_div(f, &p, &a0);
    let c = exact_div(f, &dp, &a0);
    let mut d = sub(f, &c, &derivative(f, &b));
    let mut i = 1;
    while b.degree() != Some(0) {
        let a = gcd(f, &b, &d);
        b = exact_div(f, &b, &a);
        let c = exact_div(f, &d, &a);
        d = sub(f, &c, &derivative(f, &b));
        if a.degree() != Some(0) {
            parts.push((a, i));
        }
        i += 1;
    }
    Ok(SquarefreeDecomposition { parts })
}

/// The unique `R` with `R = R_i mod M_i` and `deg R < sum deg M_i`.
pub fn crt_combine<F: Field>(
    f: &F,
    residues: &[(DensePoly<F::Elem>, DensePoly<F::Elem>)],
) -> Result<DensePoly<F::Elem>> {
    let mut total = DensePoly::one(f);
    for (_, m) in residues {
        if m.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        total = mul(f, &total, m);
    }
    let mut acc = DensePoly::zero();
    for (r, m) in residues {
        let cofactor = exact_div(f, &total, m);
        let (g, s, _) = xgcd(f, &rem(f, &cofactor, m)?, m);
        if g.degree() != Some(0) {
            return Err(Error::ModuliNotCoprime);
        }
        let c = rem(f, &mul(f, r, &s), m)?;
        acc = super::add(f, &acc, &mul(f, &c, &cofactor));
    }
    rem(f, &acc, &total)
}
