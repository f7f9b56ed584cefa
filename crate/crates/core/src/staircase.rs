//! Zero-dimensional monomial ideals in two variables, and multiplication
//! and inversion modulo them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::upoly::{inv_series, kronecker_mul, BivPoly};

/// Minimal generators `x1^mu_i x2^nu_i` with `mu` strictly decreasing,
/// `nu` strictly increasing, `nu_1 = 0` and `mu_t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Staircase {
    gens: Vec<(usize, usize)>,
}

impl Staircase {
    pub fn new(gens: Vec<(usize, usize)>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidStaircase(m.to_string()));
        let (first, last) = match (gens.first(), gens.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return bad("no generators"),
        };
        if first.1 != 0 {
            return bad("first generator must be a pure power of x1");
        }
        if last.0 != 0 {
            return bad("last generator must be a pure power of x2");
        }
        for w in gens.windows(2) {
            if w[1].0 >= w[0].0 || w[1].1 <= w[0].1 {
                return bad("x1-exponents must decrease and x2-exponents increase");
            }
        }
        Ok(Staircase { gens })
    }

    /// Minimal generators of the ideal spanned by arbitrary monomials.
    pub fn from_monomials(mut mons: Vec<(usize, usize)>) -> Result<Self> {
        mons.sort_by_key(|&(a, b)| (b, a));
        let mut gens: Vec<(usize, usize)> = Vec::new();
        for (a, b) in mons {
            if gens.last().is_none_or(|&(la, _)| a < la) {
                gens.push((a, b));
            }
        }
        Staircase::new(gens)
    }

    pub fn gens(&self) -> &[(usize, usize)] {
        &self.gens
    }

    /// Number of generators `t`.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `mu_1`, the x1-extent.
    pub fn width(&self) -> usize {
        self.gens[0].0
    }

    /// `nu_t`, the number of rows.
    pub fn height(&self) -> usize {
        self.gens[self.gens.len() - 1].1
    }

    /// Number of standard monomials in row `x2^b`.
    pub fn row_width(&self, b: usize) -> usize {
        self.gens
            .windows(2)
            .find(|w| w[0].1 <= b && b < w[1].1)
            .map_or(0, |w| w[0].0)
    }

    /// Dimension of the quotient: `sum mu_i (nu_(i+1) - nu_i)`.
    pub fn degree(&self) -> usize {
        self.gens.windows(2).map(|w| w[0].0 * (w[1].1 - w[0].1)).sum()
    }

    /// Whether `x1^a x2^b` lies in the ideal.
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.gens.iter().any(|&(m, n)| a >= m && b >= n)
    }

    /// Standard monomials, row by row.
    pub fn monomials(&self) -> Vec<(usize, usize)> {
        (0..self.height())
            .flat_map(|b| (0..self.row_width(b)).map(move |a| (a, b)))
            .collect()
    }

    /// The ideal plus `x1^m`.
    pub fn truncate(&self, m: usize) -> Staircase {
        let mut mons = self.gens.clone();
        mons.push((m, 0));
        Staircase::from_monomials(mons).expect("still zero-dimensional")
    }

    /// The colon ideal by `x1^m`.
    pub fn colon(&self, m: usize) -> Staircase {
        let mons = self.gens.iter().map(|&(a, b)| (a.saturating_sub(m), b)).collect();
        Staircase::from_monomials(mons).expect("still zero-dimensional")
    }

    /// Subsequence of generators where each next index is the first whose
    /// x1-exponent drops below half of the current one; always ends at `t`.
    pub fn sparsify(&self) -> Staircase {
        let t = self.gens.len();
        let mut keep = vec![self.gens[0]];
        let mut cur = 0;
        while cur + 1 < t {
            let mu = self.gens[cur].0;
            let next = (cur + 1..t).find(|&j| 2 * self.gens[j].0 < mu).unwrap_or(t - 1);
            keep.push(self.gens[next]);
            cur = next;
        }
        Staircase { gens: keep }
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Staircase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let gens = s
            .split(',')
            .map(|p| {
                let (a, b) = p
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::InvalidStaircase(format!("expected mu:nu, got {p:?}")))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidStaircase(format!("bad exponent {x:?}")))
                };
                Ok((parse(a)?, parse(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Staircase::new(gens)
    }
}

/// An element of `k[x1,x2]/I` on the standard monomials: `rows[b][a]` is
/// the coefficient of `x1^a x2^b`, row `b` holding exactly `row_width(b)` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StairPoly<E> {
    pub rows: Vec<Vec<E>>,
}

impl<E: Clone> StairPoly<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F, s: &Staircase) -> Self {
        StairPoly {
            rows: (0..s.height()).map(|b| vec![f.zero(); s.row_width(b)]).collect(),
        }
    }

    pub fn one<F: Field<Elem = E>>(f: &F, s: &Staircase) -> Self {
        let mut p = Self::zero(f, s);
        if s.degree() > 0 {
            p.rows[0][0] = f.one();
        }
        p
    }

    /// Builds from `(a, b, c)` terms; terms on monomials of the ideal are rejected.
    pub fn from_terms<F: Field<Elem = E>>(f: &F, s: &Staircase, terms: &[(usize, usize, E)]) -> Result<Self> {
        let mut p = Self::zero(f, s);
        for (a, b, c) in terms {
            if s.contains(*a, *b) {
                return Err(Error::OutsideBasis { a: *a, b: *b });
            }
            p.rows[*b][*a] = f.add(&p.rows[*b][*a], c);
        }
        Ok(p)
    }

    /// Reduces an arbitrary dense bivariate polynomial modulo the ideal.
    pub fn from_biv<F: Field<Elem = E>>(f: &F, s: &Staircase, p: &BivPoly<E>) -> Self {
        reshape(f, &p.rows, s)
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&E> {
        self.rows.get(b).and_then(|r| r.get(a))
    }

    pub fn check_shape(&self, s: &Staircase) -> Result<()> {
        if self.rows.len() != s.height() {
            return Err(Error::LengthMismatch {
                expected: s.height(),
                got: self.rows.len(),
            });
        }
        for (b, r) in self.rows.iter().enumerate() {
            if r.len() != s.row_width(b) {
                return Err(Error::LengthMismatch {
                    expected: s.row_width(b),
                    got: r.len(),
                });
            }
        }
        Ok(())
    }

    pub fn to_biv(&self) -> BivPoly<E> {
        BivPoly::new(self.rows.clone())
    }
}

/// Reads `rows` on the standard monomials of `s`: entries outside are
/// dropped, missing ones are zero.
pub(crate) fn reshape<F: Field>(f: &F, rows: &[Vec<F::Elem>], s: &Staircase) -> StairPoly<F::Elem> {
    StairPoly {
        rows: (0..s.height())
            .map(|b| {
                let w = s.row_width(b);
                let mut r: Vec<F::Elem> = rows.get(b).map_or(Vec::new(), |r| r[..r.len().min(w)].to_vec());
                r.resize(w, f.zero());
                r
            })
            .collect(),
    }
}

fn add_stair<F: Field>(f: &F, a: &StairPoly<F::Elem>, b: &StairPoly<F::Elem>) -> StairPoly<F::Elem> {
    StairPoly {
        rows: a
            .rows
            .iter()
            .zip(&b.rows)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| f.add(u, v)).collect())
            .collect(),
    }
}

fn sub_stair<F: Field>(f: &F, a: &StairPoly<F::Elem>, b: &StairPoly<F::Elem>) -> StairPoly<F::Elem> {
    StairPoly {
        rows: a
            .rows
            .iter()
            .zip(&b.rows)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| f.sub(u, v)).collect())
            .collect(),
    }
}

/// `a + b`.
pub fn stair_add<F: Field>(f: &F, a: &StairPoly<F::Elem>, b: &StairPoly<F::Elem>, s: &Staircase) -> Result<StairPoly<F::Elem>> {
    a.check_shape(s)?;
    b.check_shape(s)?;
    Ok(add_stair(f, a, b))
}

/// `a - b`.
pub fn stair_sub<F: Field>(f: &F, a: &StairPoly<F::Elem>, b: &StairPoly<F::Elem>, s: &Staircase) -> Result<StairPoly<F::Elem>> {
    a.check_shape(s)?;
    b.check_shape(s)?;
    Ok(sub_stair(f, a, b))
}

fn boxed<E: Clone>(p: &StairPoly<E>, width: usize, height: usize) -> BivPoly<E> {
    BivPoly::new(
        p.rows
            .iter()
            .take(height)
            .map(|r| r[..r.len().min(width)].to_vec())
            .collect(),
    )
}

/// `F G mod I`, from one rectangle product per step of the sparsified staircase.
pub fn mono_mul<F: Field>(
    f: &F,
    a: &StairPoly<F::Elem>,
    b: &StairPoly<F::Elem>,
    s: &Staircase,
) -> Result<StairPoly<F::Elem>> {
    a.check_shape(s)?;
    b.check_shape(s)?;
    Ok(mono_mul_unchecked(f, a, b, s))
}

fn mono_mul_unchecked<F: Field>(
    f: &F,
    a: &StairPoly<F::Elem>,
    b: &StairPoly<F::Elem>,
    s: &Staircase,
) -> StairPoly<F::Elem> {
    let sp = s.sparsify();
    let g = sp.gens();
    let mut out = StairPoly::zero(f, s);
    let mut row = 0;
    let mut rects: Vec<(usize, usize, BivPoly<F::Elem>)> = Vec::new();
    for w in g.windows(2) {
        let (width, height) = (w[0].0, w[1].1);
        if width == 0 || row >= s.height() {
            continue;
        }
        let h = kronecker_mul(f, &boxed(a, width, height), &boxed(b, width, height));
        while row < height.min(s.height()) {
            let rw = s.row_width(row);
            for c in 0..rw {
                out.rows[row][c] = h.get(c, row).cloned().unwrap_or_else(|| f.zero());
            }
            row += 1;
        }
        if cfg!(debug_assertions) {
            rects.push((width, height, h));
        }
    }
    if cfg!(debug_assertions) {
        for (width, height, h) in &rects {
            for (bb, r) in out.rows.iter().enumerate().take(*height) {
                for (aa, c) in r.iter().enumerate().take(*width) {
                    let v = h.get(aa, bb).cloned().unwrap_or_else(|| f.zero());
                    debug_assert!(v == *c, "covering rectangles disagree at ({aa},{bb})");
                }
            }
        }
    }
    out
}

/// `1/F mod I` by Newton iteration on the x1-extent.
pub fn mono_inv<F: Field>(f: &F, a: &StairPoly<F::Elem>, s: &Staircase) -> Result<StairPoly<F::Elem>> {
    a.check_shape(s)?;
    if s.degree() == 0 {
        return Ok(a.clone());
    }
    if f.is_zero(&a.rows[0][0]) {
        return Err(Error::NotInvertible);
    }
    Ok(mono_inv_rec(f, a, s))
}

fn mono_inv_rec<F: Field>(f: &F, a: &StairPoly<F::Elem>, s: &Staircase) -> StairPoly<F::Elem> {
    if s.width() == 1 {
        let col: Vec<F::Elem> = a.rows.iter().map(|r| r[0].clone()).collect();
        let g = inv_series(f, &col, s.height()).expect("unit constant term");
        return StairPoly {
            rows: g.into_iter().map(|c| vec![c]).collect(),
        };
    }
    let mbar = s.width().div_ceil(2);
    let sbar = s.truncate(mbar);
    let gbar = mono_inv_rec(f, &reshape(f, &a.rows, &sbar), &sbar);
    let gbar = reshape(f, &gbar.rows, s);
    let e = mono_mul_unchecked(f, &gbar, a, s);
    let e2 = mono_mul_unchecked(f, &gbar, &e, s);
    sub_stair(f, &add_stair(f, &gbar, &gbar), &e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn st(s: &str) -> Staircase {
        s.parse().unwrap()
    }

    fn fp() -> PrimeField {
        PrimeField::new(2147483579).unwrap()
    }

    #[test]
    fn validation_and_text() {
        assert!(Staircase::new(vec![]).is_err());
        assert!(Staircase::new(vec![(2, 1), (0, 2)]).is_err());
        assert!(Staircase::new(vec![(2, 0), (1, 2)]).is_err());
        assert!(Staircase::new(vec![(2, 0), (2, 1), (0, 2)]).is_err());
        assert!("2:0,x:1".parse::<Staircase>().is_err());
        let s = st("2:0, 1:1, 0:2");
        assert_eq!(s.to_string(), "2:0,1:1,0:2");
        assert_eq!(st("0:0").degree(), 0);
    }

    #[test]
    fn degrees() {
        assert_eq!(st("1:0,0:1").degree(), 1);
        assert_eq!(st("2:0,1:1,0:2").degree(), 3);
        let s = st("8:0,5:1,4:2,3:3,1:4,0:5");
        assert_eq!(s.degree(), 21);
        let rows: usize = (0..s.height()).map(|b| s.row_width(b)).sum();
        assert_eq!(rows, 21);
        assert_eq!(s.monomials().len(), 21);
    }

    #[test]
    fn membership() {
        assert!(!st("1:0,0:1").contains(0, 0));
        let j = st("2:0,1:1,0:2");
        assert!(j.contains(1, 1));
        let s = st("8:0,5:1,4:2,3:3,1:4,0:5");
        for a in 0..20 {
            for b in 0..20 {
                let scan = s.gens().iter().any(|&(m, n)| m <= a && n <= b);
                assert_eq!(s.contains(a, b), scan);
                assert_eq!(!scan, b < s.height() && a < s.row_width(b));
            }
        }
    }

    #[test]
    fn truncate_and_colon() {
        let j = st("2:0,1:1,0:2");
        assert_eq!(j.truncate(1), st("1:0,0:2"));
        assert_eq!(j.truncate(2), j);
        assert_eq!(j.truncate(5), j);
        assert_eq!(j.colon(1), st("1:0,0:1"));
        assert_eq!(j.colon(0), j);
        let s = st("8:0,5:1,4:2,3:3,1:4,0:5");
        for m in 0..10 {
            let c = s.colon(m);
            let t = s.truncate(m.max(1));
            for a in 0..12 {
                for b in 0..8 {
                    assert_eq!(c.contains(a, b), s.contains(a + m, b));
                    assert_eq!(t.contains(a, b), s.contains(a, b) || a >= m.max(1));
                }
            }
        }
    }

    #[test]
    fn sparsify_examples() {
        assert_eq!(st("2:0,1:1,0:2").sparsify(), st("2:0,0:2"));
        let s = st("8:0,5:1,4:2,3:3,1:4,0:5");
        let sp = s.sparsify();
        assert_eq!(sp, st("8:0,3:3,1:4,0:5"));
        assert_eq!(sp.degree(), 28);
        assert_eq!(st("3:0,0:4").sparsify(), st("3:0,0:4"));
    }

    #[test]
    fn mul_and_inverse_examples() {
        let f = fp();
        let j = st("2:0,1:1,0:2");
        let a = StairPoly::from_terms(&f, &j, &[(0, 0, 1), (1, 0, 1), (0, 1, 1)]).unwrap();
        let b = StairPoly::from_terms(&f, &j, &[(0, 0, 1), (1, 0, 1)]).unwrap();
        let expected = StairPoly::from_terms(&f, &j, &[(0, 0, 1), (1, 0, 2), (0, 1, 1)]).unwrap();
        assert_eq!(mono_mul(&f, &a, &b, &j).unwrap(), expected);
        assert_eq!(mono_mul(&f, &a, &StairPoly::one(&f, &j), &j).unwrap(), a);
        let inv = StairPoly::from_terms(&f, &j, &[(0, 0, 1), (1, 0, f.neg(&1)), (0, 1, f.neg(&1))]).unwrap();
        assert_eq!(mono_inv(&f, &a, &j).unwrap(), inv);
        assert_eq!(mono_inv(&f, &StairPoly::one(&f, &j), &j).unwrap(), StairPoly::one(&f, &j));
        let z = StairPoly::from_terms(&f, &j, &[(1, 0, 1)]).unwrap();
        assert_eq!(mono_inv(&f, &z, &j), Err(Error::NotInvertible));
        assert!(StairPoly::from_terms(&f, &j, &[(1, 1, 1)]).is_err());
    }

    fn naive_mul(f: &PrimeField, a: &StairPoly<u64>, b: &StairPoly<u64>, s: &Staircase) -> StairPoly<u64> {
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

    fn random_staircase(rng: &mut ChaCha8Rng) -> Staircase {
        let t = rng.gen_range(1..=5);
        let mut mus: Vec<usize> = (0..t).map(|_| rng.gen_range(1..20)).collect();
        mus.sort_unstable_by(|x, y| y.cmp(x));
        mus.dedup();
        let mut gens = Vec::new();
        let mut nu = 0;
        for m in mus {
            gens.push((m, nu));
            nu += rng.gen_range(1..4);
        }
        gens.push((0, nu));
        Staircase::new(gens).unwrap()
    }

    #[test]
    fn random_products_and_inverses() {
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        for _ in 0..60 {
            let s = random_staircase(&mut rng);
            let rand_poly = |rng: &mut ChaCha8Rng| StairPoly {
                rows: (0..s.height())
                    .map(|b| (0..s.row_width(b)).map(|_| f.random(rng)).collect())
                    .collect(),
            };
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            assert_eq!(mono_mul(&f, &a, &b, &s).unwrap(), naive_mul(&f, &a, &b, &s));
            let inv = mono_inv(&f, &a, &s).unwrap();
            assert_eq!(mono_mul(&f, &a, &inv, &s).unwrap(), StairPoly::one(&f, &s));
        }
    }
}
