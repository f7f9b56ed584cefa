//! Plain-text formats for polynomials, jets and field elements.
//!
//! Univariate polynomials are space-separated coefficients in ascending
//! degree. Bivariate polynomials list rows separated by `;`, row `j` holding
//! the `x1`-coefficients of `x2^j`. Elements of an extension field are
//! length-`d` coefficient lists, and several of them in a row are separated
//! by `/`.

use tangle_core::field::{Field, PrimeField};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid integer {0:?}")]
    Integer(String),
    #[error("field element has {got} coefficients, expected {expected}")]
    Width { expected: usize, got: usize },
    #[error("invalid exponent {0:?}")]
    Exponent(String),
}

/// An integer of any sign, reduced into `[0, p)`.
pub fn parse_scalar(f: &PrimeField, s: &str) -> Result<u64, ParseError> {
    let v: i128 = s.parse().map_err(|_| ParseError::Integer(s.to_string()))?;
    let p = f.characteristic() as i128;
    Ok(v.rem_euclid(p) as u64)
}

pub fn parse_coeffs(f: &PrimeField, s: &str) -> Result<Vec<u64>, ParseError> {
    s.split_whitespace().map(|t| parse_scalar(f, t)).collect()
}

pub fn parse_rows(f: &PrimeField, s: &str) -> Result<Vec<Vec<u64>>, ParseError> {
    s.split(';').map(|r| parse_coeffs(f, r)).collect()
}

/// One element of a degree `d` extension.
pub fn parse_elem(f: &PrimeField, s: &str, d: usize) -> Result<Vec<u64>, ParseError> {
    let v = parse_coeffs(f, s)?;
    if v.len() != d {
        return Err(ParseError::Width { expected: d, got: v.len() });
    }
    Ok(v)
}

/// Elements separated by `/`. A blank string is the empty list.
pub fn parse_jet(f: &PrimeField, s: &str, d: usize) -> Result<Vec<Vec<u64>>, ParseError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split('/').map(|e| parse_elem(f, e, d)).collect()
}

pub fn parse_jet_rows(f: &PrimeField, s: &str, d: usize) -> Result<Vec<Vec<Vec<u64>>>, ParseError> {
    s.split(';').map(|r| parse_jet(f, r, d)).collect()
}

/// A nonnegative decimal integer of any size.
pub fn parse_exponent(s: &str) -> Result<num_bigint::BigUint, ParseError> {
    s.trim().parse().map_err(|_| ParseError::Exponent(s.to_string()))
}

/// The zero polynomial prints as `0`.
pub fn print_coeffs(c: &[u64]) -> String {
    if c.is_empty() {
        return "0".to_string();
    }
    join(c.iter().map(u64::to_string), " ")
}

pub fn print_rows(rows: &[Vec<u64>]) -> String {
    join(rows.iter().map(|r| join(r.iter().map(u64::to_string), " ")), "; ")
}

/// Elements are padded with zeros to width `d`.
pub fn print_jet(jet: &[Vec<u64>], d: usize) -> String {
    join(jet.iter().map(|e| print_elem(e, d)), " / ")
}

pub fn print_jet_rows(rows: &[Vec<Vec<u64>>], d: usize) -> String {
    join(rows.iter().map(|r| print_jet(r, d)), "; ")
}

fn print_elem(e: &[u64], d: usize) -> String {
    let padded = e.iter().copied().chain(std::iter::repeat(0)).take(d.max(e.len()));
    join(padded.map(|c| c.to_string()), " ")
}

fn join(items: impl Iterator<Item = String>, sep: &str) -> String {
    items.collect::<Vec<_>>().join(sep)
}
