//! `x^D mod P` for huge `D`, tangling `(xi + alpha)^D` modulo each
//! primary factor of `P`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{ExtensionField, Field, PrimeField};
use crate::unitangle::PowerModulus;
use crate::upoly::{self, crt_combine, yun_squarefree, DensePoly, PolyModulus};

/// `binom(D, i)` in F for `i < n`, from `binom(D, i+1) = binom(D, i) (D - i) / (i + 1)`.
/// Needs `char >= n`.
pub fn binomial_row<F: Field>(f: &F, d: &BigUint, n: usize) -> Vec<F::Elem> {
    let p = BigUint::from(f.characteristic());
    let dm: u64 = (d % &p).try_into().expect("residue fits");
    let dm = f.from_u64(dm);
    let mut row = Vec::with_capacity(n);
    let mut c = f.one();
    for i in 0..n {
        row.push(c.clone());
        let num = f.sub(&dm, &f.from_u64(i as u64));
        let den = f.inv(&f.from_u64(i as u64 + 1)).expect("characteristic at least n");
        c = f.mul(&f.mul(&c, &num), &den);
    }
    row
}

fn monomial<F: Field>(f: &F, e: usize) -> DensePoly<F::Elem> {
    let mut c = vec![f.zero(); e + 1];
    c[e] = f.one();
    DensePoly::from_coeffs(f, c)
}

/// `x^D mod T^mu` by tangling `(xi + alpha)^D mod xi^mu`.
pub fn pow_x_mod_power<B: Field>(d: &BigUint, m: &PowerModulus<B>) -> DensePoly<B::Elem> {
    let base = m.base();
    let mu = m.mu();
    if *d < BigUint::from(m.dimension()) {
        let e: usize = d.try_into().expect("small exponent");
        return DensePoly::from_coeffs(base, m.reduce(monomial(base, e).coeffs()));
    }
    let k = m.field();
    let alpha = k.generator();
    // alpha^(D-mu+1), ..., alpha^D
    let mut apow = Vec::with_capacity(mu);
    apow.push(k.pow_big(&alpha, &(d - BigUint::from(mu - 1))));
    for i in 1..mu {
        apow.push(k.mul(&apow[i - 1], &alpha));
    }
    let binom = binomial_row(base, d, mu);
    let r: Vec<Vec<B::Elem>> = (0..mu)
        .map(|i| {
            apow[mu - 1 - i]
                .iter()
                .map(|c| base.mul(c, &binom[i]))
                .collect()
        })
        .collect();
    m.tangle(&r).expect("jet has length mu")
}

/// `x^D mod P` by repeated squaring, the baseline.
pub fn pow_x_mod_naive(f: &PrimeField, d: &BigUint, p: &DensePoly<u64>) -> Result<DensePoly<u64>> {
    let p = monic(f, p)?;
    if p.degree() == Some(0) {
        return Ok(DensePoly::zero());
    }
    let pm = PolyModulus::new(f, &p)?;
    Ok(upoly::pow_mod(f, &DensePoly::x(f), d, &pm))
}

fn monic(f: &PrimeField, p: &DensePoly<u64>) -> Result<DensePoly<u64>> {
    let lc = p.leading().ok_or(Error::DivisionByZeroPoly)?;
    let inv = f.inv(lc)?;
    Ok(upoly::scale(f, p, &inv))
}

/// `x^D mod P` through the squarefree decomposition `P = prod S_i^i`:
/// tangling modulo `S_i^i` when `S_i` is irreducible, repeated squaring
/// otherwise, then Chinese remaindering. Needs `char > deg P`.
pub fn pow_x_mod(f: &PrimeField, d: &BigUint, p: &DensePoly<u64>) -> Result<DensePoly<u64>> {
    let p = monic(f, p)?;
    if p.degree() == Some(0) {
        return Ok(DensePoly::zero());
    }
    let dec = yun_squarefree(f, &p)?;
    let mut residues = Vec::with_capacity(dec.parts.len());
    for (s, mult) in &dec.parts {
        let r = match ExtensionField::new(*f, s.clone()) {
            Ok(k) => pow_x_mod_power(d, &PowerModulus::from_field(k, *mult)?),
            Err(Error::NotIrreducible) => {
                let mut sp = DensePoly::one(f);
                for _ in 0..*mult {
                    sp = upoly::mul(f, &sp, s);
                }
                pow_x_mod_naive(f, d, &sp)?
            }
            Err(e) => return Err(e),
        };
        let mut modulus = DensePoly::one(f);
        for _ in 0..*mult {
            modulus = upoly::mul(f, &modulus, s);
        }
        residues.push((r, modulus));
    }
    crt_combine(f, &residues)
}
