//! The univariate untangling isomorphism `F[x]/<T^mu> -> K[xi]/<xi^mu>`,
//! `x -> xi + alpha`, its transpose, and tangling through duality.
//!
//! Residues modulo `T^mu` are dense polynomials over the base field `B`.
//! Jets are vectors of `mu` elements of `K = B[y]/<T>`. Linear forms on
//! `B[x]/<T^mu>` are value vectors `[L(x^i) | i < d mu]`; linear forms on
//! `K[xi]/<xi^mu>` are [`BivDualForm`] grids.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::error::{require_char, Error, Hypothesis, Result};
use crate::field::{ExtensionField, Field};
use crate::upoly::{
    self, inv_series, middle_product, nth_derivative_slice, tdiff, tmod_extend_with, DensePoly, PolyModulus,
};

/// Values `l(alpha^i xi^j)` for `i < d`, `j < mu`, stored at `j*d + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivDualForm<E> {
    d: usize,
    mu: usize,
    values: Vec<E>,
}

impl<E: Clone> BivDualForm<E> {
    pub fn new(d: usize, mu: usize, values: Vec<E>) -> Result<Self> {
        if values.len() != d * mu {
            return Err(Error::LengthMismatch {
                expected: d * mu,
                got: values.len(),
            });
        }
        Ok(BivDualForm { d, mu, values })
    }

    pub fn zero<F: Field<Elem = E>>(f: &F, d: usize, mu: usize) -> Self {
        BivDualForm {
            d,
            mu,
            values: vec![f.zero(); d * mu],
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.values[j * self.d + i]
    }

    /// The form restricted to `K xi^j`, as `d` values.
    pub fn column(&self, j: usize) -> &[E] {
        &self.values[j * self.d..(j + 1) * self.d]
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }
}

#[derive(Clone, Debug)]
struct Power<B: Field> {
    modulus: PolyModulus<B>,
    /// Reversed coefficients of `T^e` and the series `1/rev(T^e)`.
    rev: Vec<B::Elem>,
    rev_inv: Vec<B::Elem>,
}

/// `T^mu` for a monic irreducible separable `T` of degree `d`, with the
/// residue field `K = B[y]/<T>` and everything the recursions reuse.
#[derive(Clone, Debug)]
pub struct PowerModulus<B: Field> {
    k: ExtensionField<B>,
    mu: usize,
    powers: BTreeMap<usize, Power<B>>,
    inv_fact: Vec<B::Elem>,
    /// `1/Lambda mod T^mu` for the form attached to the dual generator.
    generator_inverse: OnceLock<Vec<B::Elem>>,
}

fn split_exponents(mu: usize, out: &mut BTreeSet<usize>) {
    if out.insert(mu) && mu > 1 {
        split_exponents(mu / 2, out);
        split_exponents(mu - mu / 2, out);
    }
}

impl<B: Field> PowerModulus<B> {
    /// Checks `T` (monic, separable, irreducible) and `char >= mu`.
    pub fn new(base: B, t: DensePoly<B::Elem>, mu: usize) -> Result<Self> {
        Self::from_field(ExtensionField::new(base, t)?, mu)
    }

    pub fn from_field(k: ExtensionField<B>, mu: usize) -> Result<Self> {
        if mu == 0 {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        let base = k.base().clone();
        require_char(base.characteristic(), mu as u64, Hypothesis::H1)?;
        let d = k.ext_degree();
        let mut exps = BTreeSet::new();
        split_exponents(mu, &mut exps);
        let mut polys: BTreeMap<usize, DensePoly<B::Elem>> = BTreeMap::new();
        let mut powers = BTreeMap::new();
        for &e in &exps {
            let p = if e == 1 {
                k.modulus().clone()
            } else {
                upoly::mul(&base, &polys[&(e / 2)], &polys[&(e - e / 2)])
            };
            let rev: Vec<B::Elem> = p.coeffs().iter().rev().cloned().collect();
            // Extensions at exponent e need at most d(2e+1) terms; the top
            // exponent is only used for reduction.
            let rev_inv = if e < mu || mu == 1 {
                inv_series(&base, &rev, d * (2 * e + 1))?
            } else {
                Vec::new()
            };
            powers.insert(
                e,
                Power {
                    modulus: PolyModulus::new(&base, &p)?,
                    rev,
                    rev_inv,
                },
            );
            polys.insert(e, p);
        }
        let (_, inv_fact) = upoly::factorials(&base, mu);
        Ok(PowerModulus {
            k,
            mu,
            powers,
            inv_fact,
            generator_inverse: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &ExtensionField<B> {
        &self.k
    }

    pub fn base(&self) -> &B {
        self.k.base()
    }

    /// `T`.
    pub fn modulus(&self) -> &DensePoly<B::Elem> {
        self.k.modulus()
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// `d = deg T`.
    pub fn degree(&self) -> usize {
        self.k.ext_degree()
    }

    /// `d * mu`, the dimension of the quotient over the base field.
    pub fn dimension(&self) -> usize {
        self.degree() * self.mu
    }

    fn power(&self, e: usize) -> &Power<B> {
        &self.powers[&e]
    }

    /// `T^mu` as a precomputed modulus.
    pub fn full_modulus(&self) -> &PolyModulus<B> {
        &self.power(self.mu).modulus
    }

    /// Reduction modulo `T^mu`, as exactly `d mu` coefficients.
    pub fn reduce(&self, f: &[B::Elem]) -> Vec<B::Elem> {
        self.full_modulus().reduce_slice(self.base(), f)
    }

    /// Product modulo `T^mu`.
    pub fn mul_mod(&self, a: &DensePoly<B::Elem>, b: &DensePoly<B::Elem>) -> DensePoly<B::Elem> {
        self.full_modulus().mul(self.base(), a, b)
    }

    fn scale_k(&self, a: &[B::Elem], c: &B::Elem) -> Vec<B::Elem> {
        a.iter().map(|x| self.base().mul(x, c)).collect()
    }

    /// `pi(F) = sum_i F^(i)(alpha)/i! xi^i`, the first `mu` Taylor
    /// coefficients of `F` at `alpha`.
    pub fn untangle(&self, f: &DensePoly<B::Elem>) -> Vec<Vec<B::Elem>> {
        let top = self.reduce(f.coeffs());
        let mut out = Vec::with_capacity(self.mu);
        self.untangle_rec(&top, self.mu, &mut out);
        out.iter()
            .zip(&self.inv_fact)
            .map(|(v, c)| self.scale_k(v, c))
            .collect()
    }

    /// Appends `F(alpha), F'(alpha), ..., F^(m-1)(alpha)`; `f` has `d m` coefficients.
    fn untangle_rec(&self, f: &[B::Elem], m: usize, out: &mut Vec<Vec<B::Elem>>) {
        let base = self.base();
        if m == 1 {
            out.push(self.k.from_poly(f));
            return;
        }
        let lam = m / 2;
        let f0 = self.power(lam).modulus.reduce_slice(base, f);
        self.untangle_rec(&f0, lam, out);
        let fd = nth_derivative_slice(base, f, lam);
        let f1 = self.power(m - lam).modulus.reduce_slice(base, &fd);
        self.untangle_rec(&f1, m - lam, out);
    }

    /// The transpose of [`PowerModulus::untangle`]: the form `l o pi`
    /// read on the power basis `1, x, ..., x^(d mu - 1)`.
    pub fn untangle_transposed(&self, l: &BivDualForm<B::Elem>) -> Result<Vec<B::Elem>> {
        let d = self.degree();
        if l.d() != d || l.mu() != self.mu {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                got: l.values().len(),
            });
        }
        let cols: Vec<Vec<B::Elem>> = (0..self.mu)
            .map(|j| self.scale_k(l.column(j), &self.inv_fact[j]))
            .collect();
        Ok(self.untangle_t_rec(&cols, self.mu))
    }

    fn untangle_t_rec(&self, cols: &[Vec<B::Elem>], m: usize) -> Vec<B::Elem> {
        if m == 1 {
            return cols[0].clone();
        }
        let base = self.base();
        let d = self.degree();
        let lam = m / 2;
        let p0 = self.power(lam);
        let v0 = self.untangle_t_rec(&cols[..lam], lam);
        let u0 = tmod_extend_with(base, &v0, &p0.rev, &p0.rev_inv, d * m);
        let p1 = self.power(m - lam);
        let v1 = self.untangle_t_rec(&cols[lam..], m - lam);
        let w = tmod_extend_with(base, &v1, &p1.rev, &p1.rev_inv, d * m - lam);
        let u1 = tdiff(base, &w, lam);
        u0.iter().zip(&u1).map(|(a, b)| base.add(a, b)).collect()
    }

    /// `1/F mod T^mu`: invert modulo `T`, then Newton lifting.
    pub fn inv_mod_power(&self, f: &DensePoly<B::Elem>) -> Result<DensePoly<B::Elem>> {
        let base = self.base();
        let fbar = self.k.from_poly(f.coeffs());
        let mut g = self.k.inv(&fbar).map_err(|_| Error::NotInvertible)?;
        let mut chain = vec![self.mu];
        while *chain.last().unwrap() > 1 {
            let e = *chain.last().unwrap();
            chain.push(e - e / 2);
        }
        for &e in chain.iter().rev().skip(1) {
            let pm = &self.power(e).modulus;
            let fe = pm.reduce_slice(base, f.coeffs());
            let mut h = pm.reduce_slice(base, &base.poly_mul(&fe, &g));
            for c in h.iter_mut() {
                *c = base.neg(c);
            }
            h[0] = base.add(&h[0], &base.from_u64(2));
            g = pm.reduce_slice(base, &base.poly_mul(&g, &h));
        }
        Ok(DensePoly::from_coeffs(base, g))
    }

    /// Coefficients of `Lambda = zeta(L)`: `Lambda_i = sum_j s_(i+j+1) L_j`
    /// with `s` the coefficients of `T^mu`.
    fn zeta(&self, l: &[B::Elem]) -> Vec<B::Elem> {
        let n = self.dimension();
        let s = self.full_modulus().modulus();
        let mut w: Vec<B::Elem> = s[1..].to_vec();
        w.resize(2 * n - 1, self.base().zero());
        middle_product(self.base(), l, &w, n)
    }

    /// The `F` with `F . L = L'`, i.e. `L'(x^i) = L(x^i F mod T^mu)`.
    pub fn hankel_solve(&self, l: &[B::Elem], lp: &[B::Elem]) -> Result<DensePoly<B::Elem>> {
        let n = self.dimension();
        for v in [l, lp] {
            if v.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let base = self.base();
        let lam = DensePoly::from_coeffs(base, self.zeta(l));
        let lam_inv = self.inv_mod_power(&lam).map_err(|_| Error::NotAGenerator)?;
        let lamp = DensePoly::from_coeffs(base, self.zeta(lp));
        Ok(self.mul_mod(&lamp, &lam_inv))
    }

    /// The form with `l(alpha^(d-1) xi^(mu-1)) = 1` and zero elsewhere.
    pub fn dual_generator(&self) -> BivDualForm<B::Elem> {
        let base = self.base();
        let mut g = BivDualForm::zero(base, self.degree(), self.mu);
        let last = g.values.len() - 1;
        g.values[last] = base.one();
        g
    }

    /// The transposed product `G . l : H -> l(G H)`.
    pub fn dual_tproduct(
        &self,
        g: &[Vec<B::Elem>],
        l: &BivDualForm<B::Elem>,
    ) -> Result<BivDualForm<B::Elem>> {
        let (d, mu) = (self.degree(), self.mu);
        if g.len() != mu {
            return Err(Error::LengthMismatch {
                expected: mu,
                got: g.len(),
            });
        }
        if let Some(bad) = g.iter().find(|gk| gk.len() != d) {
            return Err(Error::LengthMismatch {
                expected: d,
                got: bad.len(),
            });
        }
        if l.d() != d || l.mu() != mu {
            return Err(Error::LengthMismatch {
                expected: d * mu,
                got: l.values().len(),
            });
        }
        let base = self.base();
        let s = 2 * d - 1;
        let p1 = self.power(1);
        // Each column, extended to l_j(alpha^a) for a < 2d-1, occupies a slot of width s.
        let mut w = vec![base.zero(); mu * s];
        for j in 0..mu {
            let ext = tmod_extend_with(base, l.column(j), &p1.rev, &p1.rev_inv, s);
            w[j * s..(j + 1) * s].clone_from_slice(&ext);
        }
        let mut gp = vec![base.zero(); (mu - 1) * s + d];
        for (k, gk) in g.iter().enumerate() {
            gp[k * s..k * s + d].clone_from_slice(gk);
        }
        w.resize(mu * s + gp.len() - 1, base.zero());
        let r = middle_product(base, &gp, &w, mu * s);
        let mut values = Vec::with_capacity(d * mu);
        for j in 0..mu {
            values.extend_from_slice(&r[j * s..j * s + d]);
        }
        BivDualForm::new(d, mu, values)
    }

    /// Inverse of [`PowerModulus::untangle`].
    pub fn tangle(&self, g: &[Vec<B::Elem>]) -> Result<DensePoly<B::Elem>> {
        let gen = self.dual_generator();
        let lp = self.untangle_transposed(&self.dual_tproduct(g, &gen)?)?;
        let inv = self.generator_inverse.get_or_init(|| {
            let l = self.untangle_transposed(&gen).expect("shape");
            let lam = DensePoly::from_coeffs(self.base(), self.zeta(&l));
            self.inv_mod_power(&lam)
                .expect("the dual generator generates")
                .into_coeffs()
        });
        let base = self.base();
        let lamp = self.zeta(&lp);
        Ok(DensePoly::from_coeffs(
            base,
            self.reduce(&base.poly_mul(&lamp, inv)),
        ))
    }
}
