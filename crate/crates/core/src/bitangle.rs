//! The bivariate isomorphism `F[x1,x2]/I -> K[xi1,xi2]/J'` for an
//! `m`-primary ideal `I` whose translate `J'` is a monomial ideal, and the
//! quotient arithmetic it enables.
//!
//! The defining data is the maximal ideal `m = <T1(x1), T2(x1,x2)>` and the
//! staircase of `J'`. The standard monomials of `I` are those of the scaled
//! staircase `(d1 mu_i, d2 nu_i)`, so `I` itself is never computed.
//!
//! Field tower: `K' = F[y1]/<T1>`, `K = K'[y2]/<T2(alpha1, y2)>`.

use crate::error::{require_char, Hypothesis, Result};
use crate::field::{tower_create, ExtensionField, Field, PrimeField, TowerField};
use crate::staircase::{mono_inv, mono_mul, reshape, StairPoly, Staircase};
use crate::unitangle::PowerModulus;
use crate::upoly::{self, inv_series, mul_trunc, taylor_shift_slice, BivPoly, DensePoly};

/// An element of the inner field `K'`.
pub type InnerElem = Vec<u64>;
/// An element of `K`: `d2` coordinates over `K'`.
pub type KElem = Vec<Vec<u64>>;

/// The maximal ideal `<T1, T2>` with its residue field tower.
#[derive(Clone, Debug)]
pub struct MaximalIdeal {
    t1: DensePoly<u64>,
    t2: BivPoly<u64>,
    k: TowerField,
    alpha1: KElem,
    alpha2: KElem,
}

impl MaximalIdeal {
    /// `t2.rows[j]` holds the x1-coefficients of `x2^j`; `T2` must be monic in `x2`.
    pub fn new(f: PrimeField, t1: DensePoly<u64>, t2: BivPoly<u64>) -> Result<Self> {
        let k = tower_create(f, &t1, &t2)?;
        let alpha1 = k.embed(k.base().generator());
        let alpha2 = k.generator();
        Ok(MaximalIdeal {
            t1,
            t2,
            k,
            alpha1,
            alpha2,
        })
    }

    pub fn prime_field(&self) -> &PrimeField {
        self.k.base().base()
    }

    /// `K'`.
    pub fn inner_field(&self) -> &ExtensionField<PrimeField> {
        self.k.base()
    }

    /// `K`.
    pub fn field(&self) -> &TowerField {
        &self.k
    }

    pub fn t1(&self) -> &DensePoly<u64> {
        &self.t1
    }

    pub fn t2(&self) -> &BivPoly<u64> {
        &self.t2
    }

    pub fn d1(&self) -> usize {
        self.k.base().ext_degree()
    }

    pub fn d2(&self) -> usize {
        self.k.ext_degree()
    }

    pub fn degree(&self) -> usize {
        self.d1() * self.d2()
    }

    pub fn alpha1(&self) -> &KElem {
        &self.alpha1
    }

    pub fn alpha2(&self) -> &KElem {
        &self.alpha2
    }

    /// Image of `c` in `K`.
    pub fn lift(&self, c: u64) -> KElem {
        self.k.from_u64(c)
    }

    /// Staircase of the standard monomials of `I`: `(d1 mu_i, d2 nu_i)`.
    pub fn scaled(&self, jp: &Staircase) -> Staircase {
        let (d1, d2) = (self.d1(), self.d2());
        Staircase::new(jp.gens().iter().map(|&(a, b)| (d1 * a, d2 * b)).collect())
            .expect("scaling keeps a staircase")
    }
}

/// The pair `(m, J')`, with the standard monomials of `I` derived from it.
#[derive(Clone, Debug)]
pub struct BivariateConfig {
    ideal: MaximalIdeal,
    jp: Staircase,
    basis: Staircase,
    /// The shift variant is used when `d <= dispatch_factor * mu * log2(mu + 1)`.
    pub dispatch_factor: f64,
}

impl BivariateConfig {
    /// Checks `char F >= n = d mu`.
    pub fn new(ideal: MaximalIdeal, jp: Staircase) -> Result<Self> {
        let n = ideal.degree() * jp.degree();
        require_char(ideal.prime_field().modulus(), n as u64, Hypothesis::H2)?;
        let basis = ideal.scaled(&jp);
        Ok(BivariateConfig {
            ideal,
            jp,
            basis,
            dispatch_factor: 1.0,
        })
    }

    pub fn ideal(&self) -> &MaximalIdeal {
        &self.ideal
    }

    /// `J'`.
    pub fn jp(&self) -> &Staircase {
        &self.jp
    }

    /// Staircase of the standard monomials of `I`.
    pub fn basis(&self) -> &Staircase {
        &self.basis
    }

    /// `mu = deg J'`.
    pub fn mu(&self) -> usize {
        self.jp.degree()
    }

    /// `n = deg I = d mu`.
    pub fn n(&self) -> usize {
        self.basis.degree()
    }

    fn prefers_shift(&self) -> bool {
        let mu = self.mu() as f64;
        (self.ideal.degree() as f64) <= self.dispatch_factor * mu * (mu + 1.0).log2()
    }
}

/// Standard monomials of `I`, row by row.
pub fn basis_of_i(cfg: &BivariateConfig) -> Vec<(usize, usize)> {
    cfg.basis.monomials()
}

/// `F(xi1 + alpha1, xi2 + alpha2) mod J'` by two rounds of Taylor shifts.
pub fn biv_untangle_shift(f: &StairPoly<u64>, cfg: &BivariateConfig) -> Result<StairPoly<KElem>> {
    f.check_shape(&cfg.basis)?;
    untangle_shift(&cfg.ideal, &cfg.jp, f)
}

/// The same map through univariate untangling of rows over `K'`, then of
/// `xi1`-layers over `K`.
pub fn biv_untangle_layered(f: &StairPoly<u64>, cfg: &BivariateConfig) -> Result<StairPoly<KElem>> {
    f.check_shape(&cfg.basis)?;
    untangle_layered(&cfg.ideal, &cfg.jp, f)
}

pub fn biv_untangle(f: &StairPoly<u64>, cfg: &BivariateConfig) -> Result<StairPoly<KElem>> {
    if cfg.prefers_shift() {
        biv_untangle_shift(f, cfg)
    } else {
        biv_untangle_layered(f, cfg)
    }
}

/// Inverse of [`biv_untangle`], recursive on `mu_1`.
pub fn biv_tangle(g: &StairPoly<KElem>, cfg: &BivariateConfig) -> Result<StairPoly<u64>> {
    g.check_shape(&cfg.jp)?;
    tangle_rec(&cfg.ideal, &cfg.jp, g, cfg.dispatch_factor)
}

/// `F G mod I`.
pub fn quot_mul(a: &StairPoly<u64>, b: &StairPoly<u64>, cfg: &BivariateConfig) -> Result<StairPoly<u64>> {
    let pa = biv_untangle(a, cfg)?;
    let pb = biv_untangle(b, cfg)?;
    let prod = mono_mul(cfg.ideal.field(), &pa, &pb, &cfg.jp)?;
    biv_tangle(&prod, cfg)
}

/// `1/F mod I`; `NotInvertible` when `F(alpha1, alpha2) = 0`.
pub fn quot_inv(a: &StairPoly<u64>, cfg: &BivariateConfig) -> Result<StairPoly<u64>> {
    let pa = biv_untangle(a, cfg)?;
    let inv = mono_inv(cfg.ideal.field(), &pa, &cfg.jp)?;
    biv_tangle(&inv, cfg)
}

fn untangle_shift(m: &MaximalIdeal, jp: &Staircase, f: &StairPoly<u64>) -> Result<StairPoly<KElem>> {
    let (k1, k) = (m.inner_field(), m.field());
    let mu1 = jp.width();
    let a1 = k1.generator();
    // Rows: x1 -> xi1 + alpha1 over K', keeping xi1-degrees below mu1.
    let mut rows: Vec<Vec<KElem>> = Vec::with_capacity(f.rows.len());
    for r in &f.rows {
        let lifted: Vec<InnerElem> = r.iter().map(|&c| k1.from_u64(c)).collect();
        let mut s = taylor_shift_slice(k1, &lifted, &a1)?;
        s.truncate(mu1);
        rows.push(s.into_iter().map(|c| k.embed(c)).collect());
    }
    // Columns: x2 -> xi2 + alpha2 over K.
    let mut out = StairPoly::zero(k, jp);
    for a in 0..mu1 {
        let col: Vec<KElem> = rows
            .iter()
            .take_while(|r| r.len() > a)
            .map(|r| r[a].clone())
            .collect();
        let s = taylor_shift_slice(k, &col, m.alpha2())?;
        for (b, row) in out.rows.iter_mut().enumerate() {
            if a < row.len() {
                if let Some(c) = s.get(b) {
                    row[a] = c.clone();
                }
            }
        }
    }
    Ok(out)
}

fn untangle_layered(m: &MaximalIdeal, jp: &Staircase, f: &StairPoly<u64>) -> Result<StairPoly<KElem>> {
    let (k1, k) = (m.inner_field(), m.field());
    let fp = m.prime_field();
    let (mu1, nut) = (jp.width(), jp.height());
    let pm1 = PowerModulus::from_field(k1.clone(), mu1)?;
    let pm2 = PowerModulus::from_field(k.clone(), nut)?;
    let rows: Vec<Vec<InnerElem>> = f
        .rows
        .iter()
        .map(|r| pm1.untangle(&DensePoly::from_coeffs(fp, r.clone())))
        .collect();
    let mut out = StairPoly::zero(k, jp);
    for a in 0..mu1 {
        let layer: Vec<InnerElem> = rows.iter().map(|r| r[a].clone()).collect();
        let jet = pm2.untangle(&DensePoly::from_coeffs(k1, layer));
        for (b, row) in out.rows.iter_mut().enumerate() {
            if a < row.len() {
                row[a] = jet[b].clone();
            }
        }
    }
    Ok(out)
}

fn untangle_dispatch(m: &MaximalIdeal, jp: &Staircase, f: &StairPoly<u64>, factor: f64) -> Result<StairPoly<KElem>> {
    let mu = jp.degree() as f64;
    if (m.degree() as f64) <= factor * mu * (mu + 1.0).log2() {
        untangle_shift(m, jp, f)
    } else {
        untangle_layered(m, jp, f)
    }
}

fn tangle_rec(m: &MaximalIdeal, jp: &Staircase, g: &StairPoly<KElem>, factor: f64) -> Result<StairPoly<u64>> {
    let fp = m.prime_field();
    let (k1, k) = (m.inner_field(), m.field());
    let si = m.scaled(jp);
    if jp.degree() == 0 {
        return Ok(StairPoly::zero(fp, &si));
    }
    let mu1 = jp.width();
    if mu1 == 1 {
        // J' = <xi1, xi2^nu2>: tangle in x2 over K', then read K'
        // coefficients as x1-rows.
        let pm = PowerModulus::from_field(k.clone(), jp.height())?;
        let jet: Vec<KElem> = g.rows.iter().map(|r| r[0].clone()).collect();
        let fa = pm.tangle(&jet)?;
        return Ok(reshape(fp, fa.coeffs(), &si));
    }
    let mbar = mu1.div_ceil(2);
    let j0 = jp.truncate(mbar);
    let fbar = tangle_rec(m, &j0, &reshape(k, &g.rows, &j0), factor)?;
    let mut fbar = reshape(fp, &fbar.rows, &si);

    let pf = untangle_dispatch(m, jp, &fbar, factor)?;
    let j1 = jp.colon(mbar);
    let h = StairPoly {
        rows: (0..j1.height())
            .map(|b| {
                (0..j1.row_width(b))
                    .map(|a| k.sub(&g.rows[b][a + mbar], &pf.rows[b][a + mbar]))
                    .collect::<Vec<KElem>>()
            })
            .collect(),
    };

    // T1(xi1 + alpha1) = xi1 Q(xi1) and W = 1/Q, both over K'.
    let prec = j1.width();
    let t1: Vec<InnerElem> = m.t1.coeffs().iter().map(|&c| k1.from_u64(c)).collect();
    let shifted = taylor_shift_slice(k1, &t1, &k1.generator())?;
    let w = inv_series(k1, &shifted[1..], prec)?;
    let wp = power_trunc(k1, &w, mbar, prec);
    let wp: Vec<KElem> = wp.into_iter().map(|c| k.embed(c)).collect();
    let hw = StairPoly {
        rows: h
            .rows
            .iter()
            .map(|r| mul_trunc(k, r, &wp, r.len()))
            .collect(),
    };

    let ebar = tangle_rec(m, &j1, &hw, factor)?;
    let mut t1p = DensePoly::one(fp);
    for _ in 0..mbar {
        t1p = upoly::mul(fp, &t1p, &m.t1);
    }
    for (b, r) in ebar.rows.iter().enumerate() {
        if r.is_empty() {
            continue;
        }
        let prod = fp.poly_mul(t1p.coeffs(), r);
        for (a, c) in prod.iter().enumerate() {
            fbar.rows[b][a] = fp.add(&fbar.rows[b][a], c);
        }
    }
    Ok(fbar)
}

/// `w^e mod x^n` by repeated squaring.
fn power_trunc<F: Field>(f: &F, w: &[F::Elem], e: usize, n: usize) -> Vec<F::Elem> {
    let mut acc = vec![f.zero(); n];
    if n == 0 {
        return acc;
    }
    acc[0] = f.one();
    let mut base = w[..w.len().min(n)].to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_trunc(f, &acc, &base, n);
        }
        e >>= 1;
        if e > 0 {
            base = mul_trunc(f, &base, &base, n);
        }
    }
    acc
}
