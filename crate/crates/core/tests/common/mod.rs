//! Test-side oracles: naive Groebner bases, formal derivatives, direct
//! evaluation and schoolbook products, independent of the library algorithms.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tangle_core::bitangle::{KElem, MaximalIdeal};
use tangle_core::field::{ExtensionField, Field, PrimeField};
use tangle_core::staircase::{StairPoly, Staircase};
use tangle_core::upoly::{BivPoly, DensePoly};

pub const P31: u64 = 2147483579;

pub fn fp31() -> PrimeField {
    PrimeField::new(P31).unwrap()
}

pub fn poly(f: &PrimeField, c: &[i64]) -> DensePoly<u64> {
    DensePoly::from_coeffs(f, c.iter().map(|&x| f.from_i64(x)).collect())
}

pub fn random_irreducible(f: &PrimeField, d: usize, rng: &mut ChaCha8Rng) -> ExtensionField<PrimeField> {
    loop {
        let mut c: Vec<u64> = (0..d).map(|_| f.random(rng)).collect();
        c.push(1);
        if let Ok(k) = ExtensionField::new(*f, DensePoly::from_coeffs(f, c)) {
            return k;
        }
    }
}

/// Random `(T1, T2)` with `deg T1 = d1`, `deg_x2 T2 = d2`.
pub fn random_ideal(f: &PrimeField, d1: usize, d2: usize, rng: &mut ChaCha8Rng) -> MaximalIdeal {
    let t1 = random_irreducible(f, d1, rng).modulus().clone();
    loop {
        let mut rows: Vec<Vec<u64>> = (0..d2).map(|_| (0..d1).map(|_| f.random(rng)).collect()).collect();
        rows.push(vec![1]);
        if let Ok(m) = MaximalIdeal::new(*f, t1.clone(), BivPoly::new(rows)) {
            return m;
        }
    }
}

pub fn random_staircase(rng: &mut ChaCha8Rng, max_t: usize, max_mu1: usize, max_step: usize) -> Staircase {
    let t = rng.gen_range(1..=max_t);
    let mut mus: Vec<usize> = (0..t).map(|_| rng.gen_range(1..=max_mu1)).collect();
    mus.sort_unstable_by(|a, b| b.cmp(a));
    mus.dedup();
    let mut gens = Vec::new();
    let mut nu = 0;
    for m in mus {
        gens.push((m, nu));
        nu += rng.gen_range(1..=max_step);
    }
    gens.push((0, nu));
    Staircase::new(gens).unwrap()
}

/// Random staircase of degree at most `max_deg`.
pub fn random_staircase_of_degree(rng: &mut ChaCha8Rng, max_t: usize, max_deg: usize) -> Staircase {
    loop {
        let s = random_staircase(rng, max_t, max_deg.max(1), 4.min(max_deg));
        if s.degree() <= max_deg {
            return s;
        }
    }
}

pub fn random_stair<F: Field>(f: &F, s: &Staircase, rng: &mut ChaCha8Rng) -> StairPoly<F::Elem> {
    StairPoly {
        rows: (0..s.height())
            .map(|b| (0..s.row_width(b)).map(|_| f.random(rng)).collect())
            .collect(),
    }
}

/// Product then discard of every monomial in the ideal.
pub fn naive_stair_mul<F: Field>(f: &F, a: &StairPoly<F::Elem>, b: &StairPoly<F::Elem>, s: &Staircase) -> StairPoly<F::Elem> {
    let mut out = StairPoly::zero(f, s);
    for (b1, r1) in a.rows.iter().enumerate() {
        for (a1, c1) in r1.iter().enumerate() {
            for (b2, r2) in b.rows.iter().enumerate() {
                for (a2, c2) in r2.iter().enumerate() {
                    if !s.contains(a1 + a2, b1 + b2) {
                        let t = &mut out.rows[b1 + b2][a1 + a2];
                        *t = f.add(t, &f.mul(c1, c2));
                    }
                }
            }
        }
    }
    out
}

/// `sum_i c_i x^i` at `x` in `k`, coefficients from the base field.
pub fn eval_in_ext<B: Field>(k: &ExtensionField<B>, c: &[B::Elem], x: &[B::Elem]) -> Vec<B::Elem> {
    let x = x.to_vec();
    c.iter()
        .rev()
        .fold(k.zero(), |acc, ci| k.add(&k.mul(&acc, &x), &k.embed(ci.clone())))
}

/// Formal derivative by the power rule.
pub fn formal_derivative<F: Field>(f: &F, c: &[F::Elem]) -> Vec<F::Elem> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, ci)| f.mul(ci, &f.from_u64(i as u64)))
        .collect()
}

/// `F^(i)(alpha) / i!` for `i < mu`.
pub fn taylor_oracle<B: Field>(k: &ExtensionField<B>, c: &[B::Elem], mu: usize) -> Vec<Vec<B::Elem>> {
    let base = k.base();
    let mut cur = c.to_vec();
    let mut fact = base.one();
    let alpha = k.generator();
    let mut out = Vec::with_capacity(mu);
    for i in 0..mu {
        if i > 0 {
            fact = base.mul(&fact, &base.from_u64(i as u64));
            cur = formal_derivative(base, &cur);
        }
        let v = eval_in_ext(k, &cur, &alpha);
        let inv = base.inv(&fact).unwrap();
        out.push(v.iter().map(|x| base.mul(x, &inv)).collect());
    }
    out
}

/// `F(alpha1, alpha2)` by Horner in both variables.
pub fn eval_biv(m: &MaximalIdeal, rows: &[Vec<u64>]) -> KElem {
    let k = m.field();
    let (a1, a2) = (m.alpha1(), m.alpha2());
    rows.iter().rev().fold(k.zero(), |acc, r| {
        let row = r
            .iter()
            .rev()
            .fold(k.zero(), |s, c| k.add(&k.mul(&s, a1), &m.lift(*c)));
        k.add(&k.mul(&acc, a2), &row)
    })
}

/// `F(xi1 + alpha1, xi2 + alpha2) mod J'` for any dense `F`, term by term.
pub fn naive_untangle(m: &MaximalIdeal, jp: &Staircase, rows: &[Vec<u64>]) -> StairPoly<KElem> {
    let k = m.field();
    let linear = |alpha: &KElem, a: usize, b: usize| {
        let mut p = StairPoly::zero(k, jp);
        let mut terms = vec![(0, 0, alpha.clone()), (a, b, k.one())];
        terms.retain(|(x, y, _)| !jp.contains(*x, *y));
        for (x, y, c) in terms {
            p.rows[y][x] = k.add(&p.rows[y][x], &c);
        }
        p
    };
    let s1 = linear(m.alpha1(), 1, 0);
    let s2 = linear(m.alpha2(), 0, 1);
    let one = StairPoly::one(k, jp);
    let mut out = StairPoly::zero(k, jp);
    let mut p2 = one.clone();
    for row in rows {
        let mut p1 = p2.clone();
        for c in row {
            let term = p1
                .rows
                .iter()
                .map(|r| r.iter().map(|x| k.mul(x, &m.lift(*c))).collect())
                .collect::<Vec<Vec<KElem>>>();
            for (o, t) in out.rows.iter_mut().zip(&term) {
                for (x, y) in o.iter_mut().zip(t) {
                    *x = k.add(x, y);
                }
            }
            p1 = naive_stair_mul(k, &p1, &s1, jp);
        }
        p2 = naive_stair_mul(k, &p2, &s2, jp);
    }
    out
}

/// Sparse bivariate polynomial keyed by `(x2-exponent, x1-exponent)`, so
/// the last key is the lex leading term with `x2 > x1`.
pub type Sparse = BTreeMap<(usize, usize), u64>;

pub fn sparse(f: &PrimeField, terms: &[(usize, usize, i64)]) -> Sparse {
    let mut s = Sparse::new();
    for &(a, b, c) in terms {
        let v = f.add(s.get(&(b, a)).unwrap_or(&0), &f.from_i64(c));
        s.insert((b, a), v);
    }
    s.retain(|_, v| *v != 0);
    s
}

fn lead(p: &Sparse) -> Option<((usize, usize), u64)> {
    p.iter().next_back().map(|(k, v)| (*k, *v))
}

fn divides(m: (usize, usize), n: (usize, usize)) -> bool {
    m.0 <= n.0 && m.1 <= n.1
}

/// `p - c x^e q`.
fn sub_shifted(f: &PrimeField, p: &mut Sparse, q: &Sparse, c: u64, e: (usize, usize)) {
    for (k, v) in q {
        let key = (k.0 + e.0, k.1 + e.1);
        let cur = *p.get(&key).unwrap_or(&0);
        let nv = f.sub(&cur, &f.mul(&c, v));
        if nv == 0 {
            p.remove(&key);
        } else {
            p.insert(key, nv);
        }
    }
}

/// Full reduction of `p` by `basis`.
pub fn normal_form(f: &PrimeField, p: &Sparse, basis: &[Sparse]) -> Sparse {
    let mut p = p.clone();
    let mut rem = Sparse::new();
    while let Some((lm, lc)) = lead(&p) {
        let div = basis.iter().find(|g| divides(lead(g).unwrap().0, lm));
        match div {
            Some(g) => {
                let (gm, gc) = lead(g).unwrap();
                let c = f.div(&lc, &gc).unwrap();
                sub_shifted(f, &mut p, g, c, (lm.0 - gm.0, lm.1 - gm.1));
            }
            None => {
                p.remove(&lm);
                rem.insert(lm, lc);
            }
        }
    }
    rem
}

fn s_poly(f: &PrimeField, a: &Sparse, b: &Sparse) -> Sparse {
    let (am, ac) = lead(a).unwrap();
    let (bm, bc) = lead(b).unwrap();
    let l = (am.0.max(bm.0), am.1.max(bm.1));
    let mut s = Sparse::new();
    sub_shifted(f, &mut s, a, f.neg(&f.inv(&ac).unwrap()), (l.0 - am.0, l.1 - am.1));
    sub_shifted(f, &mut s, b, f.inv(&bc).unwrap(), (l.0 - bm.0, l.1 - bm.1));
    s
}

/// Reduced lex Groebner basis with `x2 > x1`, sorted by leading term.
pub fn groebner(f: &PrimeField, gens: &[Sparse]) -> Vec<Sparse> {
    let mut g: Vec<Sparse> = gens.iter().filter(|p| !p.is_empty()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let r = normal_form(f, &s_poly(f, &g[i], &g[j]), &g);
        if !r.is_empty() {
            let n = g.len();
            g.push(r);
            pairs.extend((0..n).map(|i| (i, n)));
        }
    }
    // minimalize, then reduce and make monic
    let mut min: Vec<Sparse> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lm = lead(p).unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let qm = lead(q).unwrap().0;
            j != i && divides(qm, lm) && (qm != lm || j < i)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out: Vec<Sparse> = (0..min.len())
        .map(|i| {
            let others: Vec<Sparse> = min
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            let (lm, lc) = lead(&min[i]).unwrap();
            let mut tail = min[i].clone();
            tail.remove(&lm);
            let mut r = normal_form(f, &tail, &others);
            r.insert(lm, lc);
            let inv = f.inv(&lc).unwrap();
            r.values_mut().for_each(|v| *v = f.mul(v, &inv));
            r
        })
        .collect();
    out.sort_by_key(|p| lead(p).unwrap().0);
    out
}

/// Leading monomial as `(x1-exponent, x2-exponent)`.
pub fn leading_monomial(p: &Sparse) -> (usize, usize) {
    let (b, a) = lead(p).unwrap().0;
    (a, b)
}

/// Rows `x2^b` of x1-coefficients.
pub fn sparse_rows(p: &Sparse) -> Vec<Vec<u64>> {
    let h = p.keys().map(|k| k.0 + 1).max().unwrap_or(0);
    let mut rows = vec![Vec::new(); h];
    for (&(b, a), &c) in p {
        if rows[b].len() <= a {
            rows[b].resize(a + 1, 0);
        }
        rows[b][a] = c;
    }
    rows
}

/// The generators of the running example: `T1^2`, `T1 (x2 - x1 - 1)` and `(x2 - x1 - 1)^2`
/// written out in expanded form.
pub fn intro_generators(f: &PrimeField) -> Vec<Sparse> {
    vec![
        sparse(f, &[(4, 0, 1), (3, 0, 2), (2, 0, 5), (1, 0, 4), (0, 0, 4)]),
        sparse(
            f,
            &[(2, 1, 1), (1, 1, 1), (0, 1, 2), (3, 0, -1), (2, 0, -2), (1, 0, -3), (0, 0, -2)],
        ),
        sparse(
            f,
            &[(0, 2, 1), (1, 1, -2), (0, 1, -2), (2, 0, 1), (1, 0, 2), (0, 0, 1)],
        ),
    ]
}

pub fn intro_ideal(f: &PrimeField) -> MaximalIdeal {
    let t1 = poly(f, &[2, 1, 1]);
    let t2 = BivPoly::new(vec![vec![f.from_i64(-1), f.from_i64(-1)], vec![1]]);
    MaximalIdeal::new(*f, t1, t2).unwrap()
}
