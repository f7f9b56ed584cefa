//! Multi-modular number-theoretic transform for products over an arbitrary
//! prime field.
//!
//! Inputs are multiplied exactly over the integers modulo up to three fixed
//! 62-bit transform primes (Montgomery arithmetic), then recombined with
//! Garner's formula and reduced modulo the target prime.

use std::sync::{Arc, OnceLock, RwLock};

use crate::field::{Field, PrimeField};

// q - 1 = c * 2^33 for each prime, generators computed offline.
const PRIMES: [(u64, u64); 3] = [
    (4611685941117976577, 3),
    (4611685692009873409, 19),
    (4611685606110527489, 3),
];
const MAX_LOG_LEN: u32 = 33;

struct NttPrime {
    q: u64,
    /// -q^{-1} mod 2^64
    qinv_neg: u64,
    /// 2^128 mod q
    r2: u64,
    /// Per-block twiddle increments.
    rate: [u64; MAX_LOG_LEN as usize - 1],
    irate: [u64; MAX_LOG_LEN as usize - 1],
    roots: RwLock<Arc<Roots>>,
}

/// Block twiddles `w_s` and `w_s^{-1}` for `s < len`, each with its Shoup
/// companion `floor(w 2^64 / q)`.
#[derive(Default)]
struct Roots {
    fwd: Vec<(u64, u64)>,
    inv: Vec<(u64, u64)>,
}

impl NttPrime {
    fn new(q: u64, generator: u64) -> Self {
        // Newton iteration for q^{-1} mod 2^64.
        let mut inv = q;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % q as u128) as u64;
        let r2 = ((r as u128 * r as u128) % q as u128) as u64;
        let mut pr = NttPrime {
            q,
            qinv_neg: inv.wrapping_neg(),
            r2,
            rate: [0; MAX_LOG_LEN as usize - 1],
            irate: [0; MAX_LOG_LEN as usize - 1],
            roots: RwLock::new(Arc::new(Roots::default())),
        };
        let rank = MAX_LOG_LEN as usize;
        let mut root = vec![0u64; rank + 1];
        let mut iroot = vec![0u64; rank + 1];
        root[rank] = pr.pow(generator, (q - 1) >> rank);
        iroot[rank] = pr.pow(root[rank], q - 2);
        for i in (0..rank).rev() {
            root[i] = pr.mulmod(root[i + 1], root[i + 1]);
            iroot[i] = pr.mulmod(iroot[i + 1], iroot[i + 1]);
        }
        let (mut prod, mut iprod) = (1u64, 1u64);
        for i in 0..rank - 1 {
            pr.rate[i] = pr.mulmod(root[i + 2], prod);
            pr.irate[i] = pr.mulmod(iroot[i + 2], iprod);
            prod = pr.mulmod(prod, iroot[i + 2]);
            iprod = pr.mulmod(iprod, root[i + 2]);
        }
        pr
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.q as u128) as u64
    }

    /// a * b * 2^{-64} mod q, for a, b < q.
    #[inline(always)]
    fn mont_mul(&self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let m = (t as u64).wrapping_mul(self.qinv_neg);
        let u = ((t + m as u128 * self.q as u128) >> 64) as u64;
        if u >= self.q {
            u - self.q
        } else {
            u
        }
    }

    #[inline(always)]
    fn to_mont(&self, a: u64) -> u64 {
        self.mont_mul(a, self.r2)
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.q;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        acc
    }

    fn shoup_pair(&self, w: u64) -> (u64, u64) {
        (w, (((w as u128) << 64) / self.q as u128) as u64)
    }

    /// `y w mod q` up to one extra `q`, for any `y < 2^64`.
    #[inline(always)]
    fn shoup_mul(&self, y: u64, (w, ws): (u64, u64)) -> u64 {
        let qh = ((y as u128 * ws as u128) >> 64) as u64;
        y.wrapping_mul(w).wrapping_sub(qh.wrapping_mul(self.q))
    }

    fn roots(&self, half: usize) -> Arc<Roots> {
        {
            let r = self.roots.read().expect("root table lock");
            if r.fwd.len() >= half {
                return Arc::clone(&r);
            }
        }
        let mut guard = self.roots.write().expect("root table lock");
        if guard.fwd.len() < half {
            let len = half.max(1 << 10);
            let mut fwd = Vec::with_capacity(len);
            let mut inv = Vec::with_capacity(len);
            let (mut w, mut iw) = (1u64, 1u64);
            for s in 0..len {
                fwd.push(self.shoup_pair(w));
                inv.push(self.shoup_pair(iw));
                let k = (!s).trailing_zeros() as usize;
                if k < self.rate.len() {
                    w = self.mulmod(w, self.rate[k]);
                    iw = self.mulmod(iw, self.irate[k]);
                }
            }
            *guard = Arc::new(Roots { fwd, inv });
        }
        Arc::clone(&guard)
    }

    /// Natural order in, bit-reversed order out, one twiddle per block.
    /// Inputs below `q`, outputs below `4q`.
    fn forward(&self, a: &mut [u64], roots: &Roots) {
        let h = a.len().trailing_zeros();
        let q2 = 2 * self.q;
        for len in 0..h {
            let p = 1usize << (h - len - 1);
            for (block, &w) in a.chunks_exact_mut(2 * p).zip(&roots.fwd) {
                let (lo, hi) = block.split_at_mut(p);
                for (l, r) in lo.iter_mut().zip(hi.iter_mut()) {
                    let mut x = *l;
                    if x >= q2 {
                        x -= q2;
                    }
                    let t = self.shoup_mul(*r, w);
                    *l = x + t;
                    *r = x + q2 - t;
                }
            }
        }
    }

    /// Inverse of [`NttPrime::forward`] up to the factor `len`.
    /// Inputs and outputs below `2q`.
    fn inverse(&self, a: &mut [u64], roots: &Roots) {
        let h = a.len().trailing_zeros();
        let q2 = 2 * self.q;
        for len in (1..=h).rev() {
            let p = 1usize << (h - len);
            for (block, &w) in a.chunks_exact_mut(2 * p).zip(&roots.inv) {
                let (lo, hi) = block.split_at_mut(p);
                for (l, r) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*l, *r);
                    let mut u = x + y;
                    if u >= q2 {
                        u -= q2;
                    }
                    *l = u;
                    *r = self.shoup_mul(x + q2 - y, w);
                }
            }
        }
    }

    #[inline(always)]
    fn reduce4(&self, x: u64) -> u64 {
        let x = if x >= 2 * self.q { x - 2 * self.q } else { x };
        if x >= self.q {
            x - self.q
        } else {
            x
        }
    }

    /// Exact cyclic product of `a` and `b` modulo q, truncated to `out_len`.
    fn convolve(&self, a: &[u64], b: &[u64], len: usize, out_len: usize) -> Vec<u64> {
        let load = |src: &[u64]| {
            let mut v = vec![0u64; len];
            for (d, &s) in v.iter_mut().zip(src) {
                *d = if s >= self.q { s - self.q } else { s };
            }
            v
        };
        let roots = self.roots(len / 2);
        let mut fa = load(a);
        self.forward(&mut fa, &roots);
        if std::ptr::eq(a, b) {
            for x in fa.iter_mut() {
                let y = self.reduce4(*x);
                *x = self.mont_mul(y, y);
            }
        } else {
            let mut fb = load(b);
            self.forward(&mut fb, &roots);
            for (x, y) in fa.iter_mut().zip(&fb) {
                *x = self.mont_mul(self.reduce4(*x), self.reduce4(*y));
            }
        }
        self.inverse(&mut fa, &roots);
        // Undo the 2^{-64} from the pointwise product and divide by len:
        // multiply by len^{-1} * 2^128 in Montgomery form.
        let len_inv = self.pow(len as u64, self.q - 2);
        let scale = self.mont_mul(self.to_mont(len_inv), self.r2);
        fa.truncate(out_len);
        for x in fa.iter_mut() {
            *x = self.mont_mul(*x, scale);
        }
        fa
    }
}

fn ntt_primes() -> &'static [NttPrime; 3] {
    static TABLES: OnceLock<[NttPrime; 3]> = OnceLock::new();
    TABLES.get_or_init(|| PRIMES.map(|(q, g)| NttPrime::new(q, g)))
}

/// Product of two residue sequences modulo `field.modulus()`.
pub(crate) fn mul_mod_p(a: &[u64], b: &[u64], field: &PrimeField) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let len = out_len.next_power_of_two();
    assert!(
        len.trailing_zeros() <= MAX_LOG_LEN,
        "product length {out_len} exceeds transform capacity"
    );
    let p = field.modulus();
    // Coefficients of the integer product are below min(|a|,|b|) * (p-1)^2.
    let bound_bits = 2.0 * ((p - 1) as f64).log2() + (a.len().min(b.len()) as f64).log2() + 1.0;
    let nprimes = if bound_bits < 61.0 {
        1
    } else if bound_bits < 122.0 {
        2
    } else {
        3
    };
    let residues: Vec<Vec<u64>> = ntt_primes()[..nprimes]
        .iter()
        .map(|pr| pr.convolve(a, b, len, out_len))
        .collect();
    crt_to_field(&residues, field)
}

fn crt_to_field(residues: &[Vec<u64>], field: &PrimeField) -> Vec<u64> {
    let primes = ntt_primes();
    let n = residues[0].len();
    let q0 = primes[0].q;
    match residues.len() {
        1 => residues[0].iter().map(|&x| field.reduce_wide(x as u128)).collect(),
        2 => {
            let p1 = &primes[1];
            let inv_q0 = p1.pow(q0 % p1.q, p1.q - 2);
            let inv_q0_m = p1.to_mont(inv_q0);
            (0..n)
                .map(|i| {
                    let (a0, a1) = (residues[0][i], residues[1][i]);
                    let t = p1.mont_mul(p1.sub(a1, a0 % p1.q), inv_q0_m);
                    field.reduce_wide(a0 as u128 + t as u128 * q0 as u128)
                })
                .collect()
        }
        _ => {
            let (p1, p2) = (&primes[1], &primes[2]);
            let q1 = p1.q;
            let inv_q0_1 = p1.to_mont(p1.pow(q0 % q1, q1 - 2));
            let inv_q0_2 = p2.to_mont(p2.pow(q0 % p2.q, p2.q - 2));
            let inv_q1_2 = p2.to_mont(p2.pow(q1 % p2.q, p2.q - 2));
            let q0p = field.reduce_wide(q0 as u128);
            let q0q1p = field.reduce_wide(q0 as u128 * q1 as u128);
            (0..n)
                .map(|i| {
                    let (a0, a1, a2) = (residues[0][i], residues[1][i], residues[2][i]);
                    let t1 = p1.mont_mul(p1.sub(a1, a0 % q1), inv_q0_1);
                    let u = p2.mont_mul(p2.sub(a2, a0 % p2.q), inv_q0_2);
                    let t2 = p2.mont_mul(p2.sub(u, t1 % p2.q), inv_q1_2);
                    let x = field.reduce_wide(a0 as u128);
                    let y = field.mul(&field.reduce_wide(t1 as u128), &q0p);
                    let z = field.mul(&field.reduce_wide(t2 as u128), &q0q1p);
                    field.add(&field.add(&x, &y), &z)
                })
                .collect()
        }
    }
}
