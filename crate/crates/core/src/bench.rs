//! Wall-clock timing ladders over doubling sizes.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitangle::{biv_tangle, biv_untangle, quot_mul, BivariateConfig, MaximalIdeal};
use crate::error::{Error, Result};
use crate::field::{ExtensionField, Field, PrimeField};
use crate::powmod::pow_x_mod;
use crate::staircase::{mono_inv, mono_mul, StairPoly, Staircase};
use crate::unitangle::PowerModulus;
use crate::upoly::{BivPoly, DensePoly};

/// Extension degree used by the univariate ladders.
pub const UNI_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchOp {
    Untangle,
    Tangle,
    Powmod,
    MonoMul,
    MonoInv,
    BivUntangle,
    BivTangle,
    QuotMul,
}

impl BenchOp {
    pub const ALL: [BenchOp; 8] = [
        BenchOp::Untangle,
        BenchOp::Tangle,
        BenchOp::Powmod,
        BenchOp::MonoMul,
        BenchOp::MonoInv,
        BenchOp::BivUntangle,
        BenchOp::BivTangle,
        BenchOp::QuotMul,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Untangle => "untangle",
            BenchOp::Tangle => "tangle",
            BenchOp::Powmod => "powmod",
            BenchOp::MonoMul => "mono-mul",
            BenchOp::MonoInv => "mono-inv",
            BenchOp::BivUntangle => "biv-untangle",
            BenchOp::BivTangle => "biv-tangle",
            BenchOp::QuotMul => "quot-mul",
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        BenchOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| format!("unknown operation {s:?}"))
    }
}

/// One ladder row: problem size and median milliseconds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timing {
    pub n: usize,
    pub ms: f64,
}

/// Staircase `(2^(k-1), 0), (2^(k-2), 1), ..., (1, k-1), (0, k)` of degree `2^k - 1`.
pub fn dyadic_staircase(k: u32) -> Staircase {
    let mut gens: Vec<(usize, usize)> = (0..k as usize).map(|i| (1usize << (k as usize - 1 - i), i)).collect();
    gens.push((0, k as usize));
    Staircase::new(gens).expect("dyadic staircase")
}

/// A random monic irreducible polynomial of degree `d` over `f`.
pub fn random_irreducible(f: &PrimeField, d: usize, rng: &mut impl Rng) -> ExtensionField<PrimeField> {
    loop {
        let mut c: Vec<u64> = (0..d).map(|_| f.random(rng)).collect();
        c.push(1);
        if let Ok(k) = ExtensionField::new(*f, DensePoly::from_coeffs(f, c)) {
            return k;
        }
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    v[v.len() / 2]
}

fn time_runs(runs: usize, mut op: impl FnMut()) -> f64 {
    let samples = (0..runs.max(1))
        .map(|_| {
            let t = Instant::now();
            op();
            t.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    median(samples)
}

fn random_stair(f: &PrimeField, s: &Staircase, rng: &mut ChaCha8Rng) -> StairPoly<u64> {
    StairPoly {
        rows: (0..s.height())
            .map(|b| (0..s.row_width(b)).map(|_| f.random(rng)).collect())
            .collect(),
    }
}

/// Median time of `op` at each size `n`; inputs are built outside the timed region.
pub fn run_ladder(f: &PrimeField, op: BenchOp, sizes: &[usize], runs: usize) -> Result<Vec<Timing>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::with_capacity(sizes.len());
    for &n in sizes {
        if n < 2 {
            return Err(Error::LengthMismatch { expected: 2, got: n });
        }
        let ms = match op {
            BenchOp::Untangle | BenchOp::Tangle => {
                let k = random_irreducible(f, UNI_DEGREE, &mut rng);
                let m = PowerModulus::from_field(k, (n / UNI_DEGREE).max(1))?;
                let dim = m.dimension();
                let p = DensePoly::from_coeffs(f, (0..dim).map(|_| f.random(&mut rng)).collect());
                if op == BenchOp::Untangle {
                    time_runs(runs, || {
                        m.untangle(&p);
                    })
                } else {
                    let jet = m.untangle(&p);
                    m.tangle(&jet)?;
                    time_runs(runs, || {
                        m.tangle(&jet).expect("jet of length mu");
                    })
                }
            }
            BenchOp::Powmod => {
                // P = S^4 with S irreducible of degree n/4
                let k = random_irreducible(f, (n / 4).max(1), &mut rng);
                let mut p = DensePoly::one(f);
                for _ in 0..4 {
                    p = crate::upoly::mul(f, &p, k.modulus());
                }
                let d = BigUint::from(rng.gen::<u64>()) << 64u32;
                time_runs(runs, || {
                    pow_x_mod(f, &d, &p).expect("valid modulus");
                })
            }
            BenchOp::MonoMul | BenchOp::MonoInv => {
                let s = dyadic_staircase(n.ilog2());
                let a = random_stair(f, &s, &mut rng);
                let mut b = random_stair(f, &s, &mut rng);
                b.rows[0][0] = 1;
                if op == BenchOp::MonoMul {
                    time_runs(runs, || {
                        mono_mul(f, &a, &b, &s).expect("shapes match");
                    })
                } else {
                    time_runs(runs, || {
                        mono_inv(f, &b, &s).expect("unit");
                    })
                }
            }
            BenchOp::BivUntangle | BenchOp::BivTangle | BenchOp::QuotMul => {
                let k1 = random_irreducible(f, 2, &mut rng);
                let t2 = BivPoly::new(vec![vec![f.neg(&1), f.neg(&1)], vec![1]]);
                let ideal = MaximalIdeal::new(*f, k1.modulus().clone(), t2)?;
                let jp = dyadic_staircase((n / 2).max(2).ilog2());
                let cfg = BivariateConfig::new(ideal, jp)?;
                let a = random_stair(f, cfg.basis(), &mut rng);
                let b = random_stair(f, cfg.basis(), &mut rng);
                match op {
                    BenchOp::BivUntangle => time_runs(runs, || {
                        biv_untangle(&a, &cfg).expect("valid input");
                    }),
                    BenchOp::BivTangle => {
                        let g = biv_untangle(&a, &cfg)?;
                        time_runs(runs, || {
                            biv_tangle(&g, &cfg).expect("valid input");
                        })
                    }
                    _ => time_runs(runs, || {
                        quot_mul(&a, &b, &cfg).expect("valid input");
                    }),
                }
            }
        };
        out.push(Timing { n, ms });
    }
    Ok(out)
}

/// `n,ms` CSV with a header row.
pub fn to_csv(rows: &[Timing]) -> String {
    let mut s = String::from("n,ms\n");
    for r in rows {
        s.push_str(&format!("{},{:.3}\n", r.n, r.ms));
    }
    s
}

/// Time ratios between consecutive ladder rows.
pub fn ratios(rows: &[Timing]) -> Vec<f64> {
    rows.windows(2).map(|w| w[1].ms / w[0].ms.max(1e-9)).collect()
}
