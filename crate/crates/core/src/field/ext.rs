use num_bigint::BigUint;
use rand::Rng;

use super::Field;
use crate::error::{Error, Result};
use crate::upoly::{self, gcd, xgcd, DensePoly, PolyModulus};

/// The simple extension `K = B[y]/<T>` for a monic irreducible separable `T`.
///
/// Elements are coefficient vectors of length `d = deg T` in powers of the
/// generator `alpha = y mod T`.
#[derive(Clone, Debug)]
pub struct ExtensionField<B: Field> {
    base: B,
    modulus: DensePoly<B::Elem>,
    reducer: PolyModulus<B>,
    name: String,
}

impl<B: Field> ExtensionField<B> {
    /// Builds the field, rejecting non-monic, inseparable or reducible `T`.
    pub fn new(base: B, t: DensePoly<B::Elem>) -> Result<Self> {
        let d = t.degree().ok_or(Error::NotMonic)?;
        if d == 0 || !t.is_monic(&base) {
            return Err(Error::NotMonic);
        }
        let dt = upoly::derivative(&base, &t);
        if gcd(&base, &t, &dt).degree() != Some(0) {
            return Err(Error::NotSeparable);
        }
        let reducer = PolyModulus::new(&base, &t)?;
        if !is_irreducible(&base, &reducer) {
            return Err(Error::NotIrreducible);
        }
        Ok(ExtensionField {
            base,
            modulus: t,
            reducer,
            name: "a".to_string(),
        })
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn modulus(&self) -> &DensePoly<B::Elem> {
        &self.modulus
    }

    /// Degree over the base field.
    pub fn ext_degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn embed(&self, c: B::Elem) -> Vec<B::Elem> {
        let mut v = vec![self.base.zero(); self.ext_degree()];
        v[0] = c;
        v
    }

    /// The class of `y`.
    pub fn generator(&self) -> Vec<B::Elem> {
        self.from_poly(&[self.base.zero(), self.base.one()])
    }

    /// Reduces an arbitrary polynomial in `y` modulo `T`.
    pub fn from_poly(&self, c: &[B::Elem]) -> Vec<B::Elem> {
        self.reducer.reduce_slice(&self.base, c)
    }

    pub fn to_poly(&self, a: &[B::Elem]) -> DensePoly<B::Elem> {
        DensePoly::from_coeffs(&self.base, a.to_vec())
    }

    /// Number of elements of the base field.
    fn base_order(&self) -> BigUint {
        base_order(&self.base)
    }
}

fn base_order<B: Field>(base: &B) -> BigUint {
    BigUint::from(base.characteristic()).pow(base.degree() as u32)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `x^(q^d) = x mod T` and `gcd(x^(q^(d/r)) - x, T) = 1` for
/// every prime `r | d`.
fn is_irreducible<B: Field>(base: &B, m: &PolyModulus<B>) -> bool {
    let d = m.degree();
    if d == 1 {
        return true;
    }
    let q = base_order(base);
    let t = DensePoly::from_coeffs(base, m.modulus().to_vec());
    let x = DensePoly::x(base);
    // frob[k] = x^(q^k) mod T
    let mut frob = vec![m.reduce(base, &x)];
    for _ in 0..d {
        let next = upoly::pow_mod(base, frob.last().unwrap(), &q, m);
        frob.push(next);
    }
    if frob[d] != frob[0] {
        return false;
    }
    prime_divisors(d).into_iter().all(|r| {
        let h = upoly::sub(base, &frob[d / r], &frob[0]);
        gcd(base, &h, &t).degree() == Some(0)
    })
}

impl<B: Field> Field for ExtensionField<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.ext_degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.ext_degree() == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        self.from_poly(&self.base.poly_mul(a, b))
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = xgcd(&self.base, &self.to_poly(a), &self.modulus);
        debug_assert_eq!(g.degree(), Some(0));
        Ok(self.from_poly(s.coeffs()))
    }

    fn from_u64(&self, n: u64) -> Self::Elem {
        self.embed(self.base.from_u64(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn degree(&self) -> usize {
        self.ext_degree() * self.base.degree()
    }

    fn flatten_into(&self, a: &Self::Elem, out: &mut Vec<u64>) {
        for c in a {
            self.base.flatten_into(c, out);
        }
    }

    fn unflatten(&self, v: &[u64]) -> Result<Self::Elem> {
        if v.len() != self.degree() {
            return Err(Error::LengthMismatch {
                expected: self.degree(),
                got: v.len(),
            });
        }
        v.chunks(self.base.degree())
            .map(|c| self.base.unflatten(c))
            .collect()
    }

    /// Kronecker substitution: each coefficient occupies a slot of `2d - 1`
    /// base coefficients, so one base product computes all cross terms.
    fn poly_mul(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let d = self.ext_degree();
        if d == 1 {
            let a: Vec<B::Elem> = a.iter().map(|c| c[0].clone()).collect();
            let b: Vec<B::Elem> = b.iter().map(|c| c[0].clone()).collect();
            return self.base.poly_mul(&a, &b).into_iter().map(|c| vec![c]).collect();
        }
        let stride = 2 * d - 1;
        let pack = |v: &[Self::Elem]| {
            let mut out = vec![self.base.zero(); (v.len() - 1) * stride + d];
            for (i, c) in v.iter().enumerate() {
                out[i * stride..i * stride + d].clone_from_slice(c);
            }
            out
        };
        let prod = self.base.poly_mul(&pack(a), &pack(b));
        (0..a.len() + b.len() - 1)
            .map(|k| {
                let lo = k * stride;
                let hi = (lo + stride).min(prod.len());
                self.from_poly(&prod[lo..hi])
            })
            .collect()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.ext_degree()).map(|_| self.base.random(rng)).collect()
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        // Exponents only matter modulo the group order q^d - 1.
        let order = self.base_order().pow(self.ext_degree() as u32) - 1u32;
        let e = if *e > order && !self.is_zero(a) {
            e % &order
        } else {
            e.clone()
        };
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
}
