//! Coefficient fields: prime fields, simple extensions and two-level towers.
//!
//! Every field is a runtime descriptor implementing [`Field`]; elements are
//! plain values that only make sense together with their descriptor.

mod ext;
mod prime;
mod tower;

pub use ext::ExtensionField;
pub use prime::{is_prime_u64, PrimeField};
pub use tower::{tower_create, tower_flatten, tower_unflatten, TowerField};

use std::fmt::Debug;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::Result;

/// A finite field of odd characteristic, given by a descriptor.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `DivisionByZero` for zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Image of the integer `n` under Z -> F.
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    /// Appends the coordinates of `a` over the prime field (`degree()` values).
    fn flatten_into(&self, a: &Self::Elem, out: &mut Vec<u64>);
    /// Inverse of [`Field::flatten_into`]; `v` must have length `degree()`.
    fn unflatten(&self, v: &[u64]) -> Result<Self::Elem>;
    /// Product of two coefficient sequences (length `a.len() + b.len() - 1`,
    /// empty if either input is empty). Not normalized.
    fn poly_mul(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        let m = self.from_u64(n.unsigned_abs());
        if n < 0 {
            self.neg(&m)
        } else {
            m
        }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn flatten(&self, a: &Self::Elem) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.degree());
        self.flatten_into(a, &mut v);
        v
    }
}
