//! Dense elements of `Z[ζ_n]` with `i128` coefficients in the power basis.
//!
//! This is the workhorse for exact matrix products (S², braiding relation,
//! Verlinde sums) where every entry is integral after a fixed scaling.
//! Overflow panics (overflow checks are enabled in every profile we test with).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::cyc::CycNumber;
use super::field::CycloField;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntCyc {
    pub coeffs: Vec<i128>,
}

/// Arithmetic over a fixed conductor.
#[derive(Debug, Clone)]
pub struct IntField {
    field: Arc<CycloField>,
}

impl IntField {
    pub fn new(n: u64) -> Self {
        IntField { field: CycloField::get(n) }
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor()
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn zero(&self) -> IntCyc {
        IntCyc { coeffs: vec![0; self.degree()] }
    }

    pub fn constant(&self, c: i128) -> IntCyc {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    /// `Σ c·ζ^k` over `(k, c)` pairs, exponents mod `n`.
    pub fn from_exponents(&self, terms: impl IntoIterator<Item = (i64, i128)>) -> IntCyc {
        let n = self.conductor() as i64;
        let mut v = vec![0i128; n as usize];
        for (k, c) in terms {
            v[k.rem_euclid(n) as usize] += c;
        }
        IntCyc { coeffs: self.field.reduce(v) }
    }

    pub fn root(&self, k: i64) -> IntCyc {
        self.from_exponents([(k, 1)])
    }

    pub fn add_assign(&self, a: &mut IntCyc, b: &IntCyc) {
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += *y;
        }
    }

    pub fn sub(&self, a: &IntCyc, b: &IntCyc) -> IntCyc {
        IntCyc { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, a: &IntCyc, k: i128) -> IntCyc {
        IntCyc { coeffs: a.coeffs.iter().map(|x| x * k).collect() }
    }

    /// Unreduced product accumulated into `acc` (length `2φ-1`).
    pub fn mul_acc(&self, acc: &mut [i128], a: &IntCyc, b: &IntCyc) {
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &mut acc[i..i + b.coeffs.len()];
            for (slot, &y) in row.iter_mut().zip(&b.coeffs) {
                *slot += x * y;
            }
        }
    }

    pub fn acc_buffer(&self) -> Vec<i128> {
        vec![0; 2 * self.degree() - 1]
    }

    pub fn reduce_acc(&self, acc: Vec<i128>) -> IntCyc {
        IntCyc { coeffs: self.field.reduce(acc) }
    }

    pub fn mul(&self, a: &IntCyc, b: &IntCyc) -> IntCyc {
        let mut acc = self.acc_buffer();
        self.mul_acc(&mut acc, a, b);
        self.reduce_acc(acc)
    }

    /// Complex conjugation `ζ ↦ ζ^-1`.
    pub fn conj(&self, a: &IntCyc) -> IntCyc {
        self.from_exponents(a.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (-(k as i64), c)))
    }

    pub fn is_zero(&self, a: &IntCyc) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// The integer value, if `a` is a rational integer.
    pub fn as_integer(&self, a: &IntCyc) -> Option<i128> {
        a.coeffs[1..].iter().all(|&c| c == 0).then_some(a.coeffs[0])
    }

    pub fn to_cyc(&self, a: &IntCyc) -> CycNumber {
        CycNumber::from_coeffs(
            self.conductor(),
            a.coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect(),
        )
    }

    /// Exact conversion from a `CycNumber` of the same conductor with integer coefficients.
    pub fn from_cyc(&self, c: &CycNumber) -> Result<IntCyc> {
        if c.conductor() != self.conductor() {
            return Err(Error::ConductorMismatch(c.conductor(), self.conductor()));
        }
        let coeffs = c
            .coeffs()
            .iter()
            .map(|x| {
                if !x.denom().to_i64().is_some_and(|d| d == 1) {
                    return Err(Error::Assertion(format!("coefficient {x} is not integral")));
                }
                x.numer().to_i128().ok_or_else(|| Error::Assertion("coefficient overflows i128".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntCyc { coeffs })
    }
}

impl IntCyc {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_rational_arithmetic() {
        let f = IntField::new(24);
        let a = f.from_exponents([(1, 2), (5, -1), (13, 3)]);
        let b = f.from_exponents([(7, 1), (-2, 4)]);
        let prod = f.to_cyc(&f.mul(&a, &b));
        let expected = f.to_cyc(&a).mul(&f.to_cyc(&b)).unwrap();
        assert_eq!(prod, expected);
        assert_eq!(f.to_cyc(&f.conj(&a)), f.to_cyc(&a).conj());
    }

    #[test]
    fn roots_multiply() {
        let f = IntField::new(30);
        assert_eq!(f.mul(&f.root(7), &f.root(23)), f.constant(1));
        assert_eq!(f.as_integer(&f.root(15)), Some(-1));
    }
}
