mod common;

use common::{
    eval_biv, fp31, groebner, intro_generators, intro_ideal, leading_monomial, naive_untangle, normal_form,
    random_ideal, random_stair, random_staircase_of_degree, sparse, sparse_rows,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tangle_core::bitangle::{
    basis_of_i, biv_tangle, biv_untangle, biv_untangle_layered, biv_untangle_shift, quot_inv, quot_mul,
    BivariateConfig,
};
use tangle_core::field::{Field, PrimeField};
use tangle_core::staircase::{mono_mul, StairPoly, Staircase};
use tangle_core::upoly::{self, kronecker_mul, BivPoly, DensePoly};
use tangle_core::{Error, Hypothesis};

fn intro_config() -> BivariateConfig {
    let f = fp31();
    BivariateConfig::new(intro_ideal(&f), "2:0,1:1,0:2".parse().unwrap()).unwrap()
}

fn random_config(rng: &mut ChaCha8Rng) -> BivariateConfig {
    let f = fp31();
    loop {
        let d1 = rng.gen_range(1..=3);
        let d2 = rng.gen_range(1..=6 / d1);
        let m = random_ideal(&f, d1, d2, rng);
        let jp = random_staircase_of_degree(rng, 4, 8);
        if jp.degree() >= 1 {
            return BivariateConfig::new(m, jp).unwrap();
        }
    }
}

#[test]
fn groebner_structure_of_the_running_example() {
    let f = fp31();
    let gb = groebner(&f, &intro_generators(&f));
    let leads: Vec<(usize, usize)> = gb.iter().map(leading_monomial).collect();
    assert_eq!(leads, vec![(4, 0), (2, 1), (0, 2)]);
    let cfg = intro_config();
    let t1 = cfg.ideal().t1().clone();
    let scaled: Vec<(usize, usize)> = cfg.basis().gens().to_vec();
    assert_eq!(scaled, leads);
    for (g, &(mu, _)) in gb.iter().zip(cfg.jp().gens()) {
        let mut t1mu = DensePoly::one(&f);
        for _ in 0..mu {
            t1mu = upoly::mul(&f, &t1mu, &t1);
        }
        for row in sparse_rows(g) {
            let r = DensePoly::from_coeffs(&f, row);
            assert!(upoly::rem(&f, &r, &t1mu).unwrap().is_zero());
        }
    }
}

#[test]
fn quotient_product_matches_normal_form() {
    let f = fp31();
    let cfg = intro_config();
    let gb = groebner(&f, &intro_generators(&f));
    for (a1, b1) in basis_of_i(&cfg) {
        for (a2, b2) in basis_of_i(&cfg) {
            let x = StairPoly::from_terms(&f, cfg.basis(), &[(a1, b1, 1)]).unwrap();
            let y = StairPoly::from_terms(&f, cfg.basis(), &[(a2, b2, 1)]).unwrap();
            let nf = normal_form(&f, &sparse(&f, &[(a1 + a2, b1 + b2, 1)]), &gb);
            let expect = StairPoly::from_biv(&f, cfg.basis(), &BivPoly::new(sparse_rows(&nf)));
            assert_eq!(quot_mul(&x, &y, &cfg).unwrap(), expect, "x1^{a1} x2^{b1} * x1^{a2} x2^{b2}");
        }
    }
    // x1^2 x2 = -x1 x2 - 2 x2 + x1^3 + 2 x1^2 + 3 x1 + 2
    let x12 = StairPoly::from_terms(&f, cfg.basis(), &[(2, 0, 1)]).unwrap();
    let x2 = StairPoly::from_terms(&f, cfg.basis(), &[(0, 1, 1)]).unwrap();
    let expect = StairPoly::from_terms(
        &f,
        cfg.basis(),
        &[(1, 1, f.from_i64(-1)), (0, 1, f.from_i64(-2)), (3, 0, 1), (2, 0, 2), (1, 0, 3), (0, 0, 2)],
    )
    .unwrap();
    assert_eq!(quot_mul(&x12, &x2, &cfg).unwrap(), expect);
}

#[test]
fn scaled_basis_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..30 {
        let cfg = random_config(&mut rng);
        let n = cfg.ideal().degree() * cfg.jp().degree();
        assert_eq!(basis_of_i(&cfg).len(), n);
        assert_eq!(cfg.n(), n);
    }
    let f = fp31();
    let cfg = BivariateConfig::new(intro_ideal(&f), "1:0,0:1".parse().unwrap()).unwrap();
    assert_eq!(basis_of_i(&cfg), vec![(0, 0), (1, 0)]);
}

#[test]
fn isomorphism_laws_on_random_configs() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for _ in 0..60 {
        let cfg = random_config(&mut rng);
        let f = *cfg.ideal().prime_field();
        let k = cfg.ideal().field();
        let a = random_stair(&f, cfg.basis(), &mut rng);
        let b = random_stair(&f, cfg.basis(), &mut rng);
        let sa = biv_untangle_shift(&a, &cfg).unwrap();
        assert_eq!(biv_untangle_layered(&a, &cfg).unwrap(), sa);
        assert_eq!(sa.rows[0][0], eval_biv(cfg.ideal(), &a.rows));
        assert_eq!(biv_tangle(&sa, &cfg).unwrap(), a);
        let sb = biv_untangle(&b, &cfg).unwrap();
        assert_eq!(naive_untangle(cfg.ideal(), cfg.jp(), &a.rows), sa);
        let ab = kronecker_mul(&f, &a.to_biv(), &b.to_biv());
        assert_eq!(
            naive_untangle(cfg.ideal(), cfg.jp(), &ab.rows),
            mono_mul(k, &sa, &sb, cfg.jp()).unwrap()
        );
        let g = random_stair(k, cfg.jp(), &mut rng);
        assert_eq!(biv_untangle(&biv_tangle(&g, &cfg).unwrap(), &cfg).unwrap(), g);
    }
}

#[test]
fn quotient_ring_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..25 {
        let cfg = random_config(&mut rng);
        let f = *cfg.ideal().prime_field();
        let a = random_stair(&f, cfg.basis(), &mut rng);
        let b = random_stair(&f, cfg.basis(), &mut rng);
        let c = random_stair(&f, cfg.basis(), &mut rng);
        let ab = quot_mul(&a, &b, &cfg).unwrap();
        assert_eq!(ab, quot_mul(&b, &a, &cfg).unwrap());
        assert_eq!(
            quot_mul(&ab, &c, &cfg).unwrap(),
            quot_mul(&a, &quot_mul(&b, &c, &cfg).unwrap(), &cfg).unwrap()
        );
        let one = StairPoly::one(&f, cfg.basis());
        assert_eq!(quot_mul(&a, &one, &cfg).unwrap(), a);
        let inv = quot_inv(&a, &cfg).unwrap();
        assert_eq!(quot_mul(&a, &inv, &cfg).unwrap(), one);
        assert_eq!(quot_inv(&inv, &cfg).unwrap(), a);
    }
}

#[test]
fn non_units_are_rejected() {
    let f = fp31();
    let cfg = intro_config();
    // T1 + x2 - x1 - 1 vanishes at (alpha1, alpha2)
    let z = StairPoly::from_terms(&f, cfg.basis(), &[(0, 0, 1), (2, 0, 1), (0, 1, 1)]).unwrap();
    assert_eq!(quot_inv(&z, &cfg), Err(Error::NotInvertible));
}

#[test]
fn shape_and_characteristic_errors() {
    let cfg = intro_config();
    let bad = StairPoly { rows: vec![vec![1]] };
    assert!(matches!(biv_untangle(&bad, &cfg), Err(Error::LengthMismatch { .. })));
    let small = PrimeField::new(13).unwrap();
    let jp: Staircase = "3:0,0:2".parse().unwrap();
    let edge = BivariateConfig::new(intro_ideal(&small), jp).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    for _ in 0..20 {
        let a = random_stair(&small, edge.basis(), &mut rng);
        let sa = biv_untangle_shift(&a, &edge).unwrap();
        assert_eq!(biv_untangle_layered(&a, &edge).unwrap(), sa);
        assert_eq!(naive_untangle(edge.ideal(), edge.jp(), &a.rows), sa);
        assert_eq!(biv_tangle(&sa, &edge).unwrap(), a);
    }
    let jp: Staircase = "4:0,0:2".parse().unwrap();
    let err = BivariateConfig::new(intro_ideal(&small), jp).unwrap_err();
    assert!(matches!(err, Error::CharacteristicTooSmall { hypothesis: Hypothesis::H2, needed: 16, .. }));
}
