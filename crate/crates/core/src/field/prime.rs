use rand::Rng;

use super::Field;
use crate::error::{Error, Result};
use crate::ntt;

/// Products shorter than this use the quadratic loop.
const SCHOOLBOOK_CUTOFF: usize = 48;

/// The prime field F_p for an odd prime `p < 2^62`.
///
/// Elements are canonical residues in `[0, p)`. Multiplication uses Barrett
/// reduction of the 128-bit product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    shift: u32,
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 62).contains(&p) || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let shift = 64 - p.leading_zeros();
        let barrett = ((1u128 << (2 * shift)) / p as u128) as u64;
        Ok(PrimeField { p, shift, barrett })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces any `x < p^2`.
    #[inline]
    pub fn reduce(&self, x: u128) -> u64 {
        let q1 = (x >> (self.shift - 1)) as u64;
        let q = ((q1 as u128 * self.barrett as u128) >> (self.shift + 1)) as u64;
        let mut r = (x - q as u128 * self.p as u128) as u64;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    /// Reduces an arbitrary 128-bit value.
    pub fn reduce_wide(&self, x: u128) -> u64 {
        (x % self.p as u128) as u64
    }

    pub fn from_signed(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    fn schoolbook(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let t = self.reduce(x as u128 * y as u128);
                out[i + j] = self.add(&out[i + j], &t);
            }
        }
        out
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 * *b as u128)
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_signed(s0))
    }

    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree(&self) -> usize {
        1
    }

    fn flatten_into(&self, a: &u64, out: &mut Vec<u64>) {
        out.push(*a);
    }

    fn unflatten(&self, v: &[u64]) -> Result<u64> {
        match v {
            [x] => Ok(x % self.p),
            _ => Err(Error::LengthMismatch {
                expected: 1,
                got: v.len(),
            }),
        }
    }

    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if a.len().min(b.len()) < SCHOOLBOOK_CUTOFF {
            self.schoolbook(a, b)
        } else {
            ntt::mul_mod_p(a, b, self)
        }
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// Miller-Rabin with a base set that is deterministic for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &b in &BASES {
        let mut x = pow_mod_u64(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
