//! Cyclotomic field contexts: `Φ_n`, its degree, and reduction modulo `Φ_n`.

use std::collections::HashMap;
use std::ops::{AddAssign, Mul, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{cyclotomic_polynomial, euler_phi};

/// Coefficient rings we reduce over.
pub(crate) trait Coeff: Clone + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {
    fn times(&self, k: i64) -> Self;
}

impl Coeff for i128 {
    fn times(&self, k: i64) -> Self {
        self * k as i128
    }
}

impl Coeff for BigInt {
    fn times(&self, k: i64) -> Self {
        self.mul(k)
    }
}

#[derive(Debug)]
pub struct CycloField {
    n: u64,
    phi: usize,
    modulus: Arc<Vec<i64>>,
}

fn registry() -> &'static Mutex<HashMap<u64, Arc<CycloField>>> {
    static REG: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
    REG.get_or_init(Default::default)
}

impl CycloField {
    /// Shared context for `Q(ζ_n)`.
    pub fn get(n: u64) -> Arc<CycloField> {
        assert!(n >= 1);
        if let Some(f) = registry().lock().unwrap().get(&n) {
            return f.clone();
        }
        let modulus = cyclotomic_polynomial(n);
        let phi = euler_phi(n) as usize;
        debug_assert_eq!(modulus.len(), phi + 1);
        let f = Arc::new(CycloField { n, phi, modulus });
        registry().lock().unwrap().insert(n, f.clone());
        f
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduce a polynomial of any length modulo `Φ_n` (monic), in place,
    /// truncating to `phi` coefficients.
    pub(crate) fn reduce<T: Coeff>(&self, mut poly: Vec<T>) -> Vec<T> {
        let dn = self.phi;
        let m = &self.modulus;
        if poly.len() > dn {
            for top in (dn..poly.len()).rev() {
                if poly[top].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut poly[top], T::zero());
                let base = top - dn;
                for (j, &mj) in m[..dn].iter().enumerate() {
                    if mj != 0 {
                        let t = c.times(mj);
                        poly[base + j] -= &t;
                    }
                }
            }
            poly.truncate(dn);
        }
        poly.resize(dn, T::zero());
        poly
    }
}
