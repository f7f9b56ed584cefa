mod common;

use common::{fp31, poly, random_irreducible};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tangle_core::field::PrimeField;
use tangle_core::powmod::{binomial_row, pow_x_mod, pow_x_mod_naive, pow_x_mod_power};
use tangle_core::unitangle::PowerModulus;
use tangle_core::upoly::{self, DensePoly};

/// `x^e mod m` by square and multiply on `u64` exponents.
fn square_multiply(f: &PrimeField, e: u64, m: &DensePoly<u64>) -> DensePoly<u64> {
    let mut acc = DensePoly::one(f);
    for bit in (0..64).rev() {
        acc = upoly::rem(f, &upoly::mul(f, &acc, &acc), m).unwrap();
        if e >> bit & 1 == 1 {
            acc = upoly::rem(f, &upoly::mul(f, &acc, &DensePoly::x(f)), m).unwrap();
        }
    }
    acc
}

#[test]
fn small_golden_cases() {
    let f = fp31();
    let p = poly(&f, &[1, -2, 1]);
    assert_eq!(pow_x_mod(&f, &BigUint::from(5u32), &p).unwrap(), poly(&f, &[-4, 5]));
    assert_eq!(pow_x_mod_naive(&f, &BigUint::from(5u32), &p).unwrap(), poly(&f, &[-4, 5]));
    // a constant modulus collapses everything
    assert!(pow_x_mod(&f, &BigUint::from(9u32), &poly(&f, &[3])).unwrap().is_zero());
    assert!(pow_x_mod(&f, &BigUint::from(9u32), &DensePoly::zero()).is_err());
    // non-monic input is normalized
    let p2 = poly(&f, &[2, -4, 2]);
    assert_eq!(pow_x_mod(&f, &BigUint::from(5u32), &p2).unwrap(), poly(&f, &[-4, 5]));
}

#[test]
fn random_moduli_with_multiplicities() {
    let f = fp31();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..30 {
        let mut p = DensePoly::one(&f);
        for mult in 1..=5 {
            if rng.gen_bool(0.5) {
                let s = random_irreducible(&f, rng.gen_range(1..4), &mut rng).modulus().clone();
                for _ in 0..mult {
                    p = upoly::mul(&f, &p, &s);
                }
            }
        }
        if rng.gen_bool(0.3) {
            // a reducible squarefree part
            let s = upoly::mul(&f, &poly(&f, &[1, 1]), &poly(&f, &[2, 1]));
            p = upoly::mul(&f, &p, &s);
        }
        let e: u64 = rng.gen_range(0..1 << 40);
        let d = BigUint::from(e);
        assert_eq!(pow_x_mod(&f, &d, &p).unwrap(), square_multiply(&f, e, &p));
    }
}

#[test]
fn huge_exponents() {
    let f = fp31();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let k = random_irreducible(&f, 3, &mut rng);
    let m = PowerModulus::from_field(k.clone(), 4).unwrap();
    let d = BigUint::from(3u32).pow(200) + BigUint::from(17u32);
    let mut t4 = DensePoly::one(&f);
    for _ in 0..4 {
        t4 = upoly::mul(&f, &t4, k.modulus());
    }
    assert_eq!(pow_x_mod_power(&d, &m), pow_x_mod_naive(&f, &d, &t4).unwrap());
}

#[test]
fn binomials_reduce_the_exponent() {
    let f = PrimeField::new(101).unwrap();
    // binom(D, i) mod p only depends on D mod p when i < p
    let d1 = BigUint::from(5u32);
    let d2 = BigUint::from(5u32 + 101 * 7);
    assert_eq!(binomial_row(&f, &d1, 50), binomial_row(&f, &d2, 50));
    assert_eq!(binomial_row(&f, &d1, 7), vec![1, 5, 10, 10, 5, 1, 0]);
}
