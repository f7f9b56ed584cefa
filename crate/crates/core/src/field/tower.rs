use super::{ExtensionField, Field, PrimeField};
use crate::error::{Error, Result};
use crate::upoly::{BivPoly, DensePoly};

/// `K = K'[y2]/<T2(alpha1, y2)>` over `K' = F[y1]/<T1>`.
pub type TowerField = ExtensionField<ExtensionField<PrimeField>>;

/// Builds the tower from `T1(y1)` and `T2(y1, y2)`; `t2.rows[j]` holds the
/// `y1`-coefficients of `y2^j` and is reduced modulo `T1`.
pub fn tower_create(base: PrimeField, t1: &DensePoly<u64>, t2: &BivPoly<u64>) -> Result<TowerField> {
    let inner = ExtensionField::new(base, t1.clone())?;
    let coeffs: Vec<Vec<u64>> = t2.rows.iter().map(|r| inner.from_poly(r)).collect();
    let t2 = DensePoly::from_coeffs(&inner, coeffs);
    ExtensionField::new(inner, t2)
}

/// Coordinates over F: the coefficient of `alpha1^i alpha2^j` lands at `j*d1 + i`.
pub fn tower_flatten(k: &TowerField, a: &<TowerField as Field>::Elem) -> Vec<u64> {
    k.flatten(a)
}

pub fn tower_unflatten(k: &TowerField, v: &[u64]) -> Result<<TowerField as Field>::Elem> {
    if v.len() != k.degree() {
        return Err(Error::LengthMismatch {
            expected: k.degree(),
            got: v.len(),
        });
    }
    k.unflatten(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tower() -> TowerField {
        let f = PrimeField::new(2147483579).unwrap();
        // T1 = y1^2 + y1 + 2, T2 = y2^3 - y1 (y1 is not a cube in K')
        let t1 = DensePoly::from_coeffs(&f, vec![2, 1, 1]);
        let t2 = BivPoly::new(vec![vec![0, f.from_i64(-1)], vec![], vec![], vec![1]]);
        tower_create(f, &t1, &t2).unwrap()
    }

    #[test]
    fn basis_layout() {
        let k = tower();
        assert_eq!(k.degree(), 6);
        assert_eq!(tower_flatten(&k, &k.zero()), vec![0; 6]);
        let a1 = k.embed(k.base().generator());
        let a2 = k.generator();
        for j in 0..3u64 {
            for i in 0..2u64 {
                let m = k.mul(&k.pow(&a1, i), &k.pow(&a2, j));
                let mut unit = vec![0; 6];
                unit[(j * 2 + i) as usize] = 1;
                assert_eq!(tower_flatten(&k, &m), unit);
            }
        }
    }

    #[test]
    fn round_trip_and_errors() {
        let k = tower();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = k.random(&mut rng);
            assert_eq!(tower_unflatten(&k, &tower_flatten(&k, &a)).unwrap(), a);
            if !k.is_zero(&a) {
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
        }
        assert!(matches!(
            tower_unflatten(&k, &[1, 2, 3]),
            Err(Error::LengthMismatch { expected: 6, got: 3 })
        ));
        let f = *k.base().base();
        let t1 = DensePoly::from_coeffs(&f, vec![2, 1, 1]);
        // y2^2 - (y1 + 1)^2 splits
        let sq = f.poly_mul(&[1, 1], &[1, 1]);
        let bad = BivPoly::new(vec![sq.iter().map(|c| f.neg(c)).collect(), vec![], vec![1]]);
        assert!(matches!(tower_create(f, &t1, &bad), Err(Error::NotIrreducible)));
    }
}
