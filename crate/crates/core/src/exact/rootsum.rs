//! Sparse integer combinations of `M`-th roots of unity.
//!
//! Equality is decided by rewriting into a canonical basis of `Q(ζ_M)`:
//! writing `M = Π ℓ^a` and `ζ_M^e = Π ζ_{ℓ^a}^{x_ℓ}` (CRT), each factor is
//! normalised so that the top base-`ℓ` digit of `x_ℓ` is at most `ℓ-2`,
//! using `1 + ζ_ℓ + … + ζ_ℓ^(ℓ-1) = 0`. The products of these per-prime-power
//! bases form a basis of `Q(ζ_M)`, so an element is zero exactly when its
//! canonical coefficients all vanish. Cost is proportional to the number of
//! terms, independent of `φ(M)`, which is what makes exact checks on large
//! models affordable.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::ball::{Ball, ComplexBall};
use super::cyc::CycNumber;
use super::poly::prime_powers;
use super::rational::Rational;

#[derive(Debug)]
struct Component {
    ell: u64,
    /// `ℓ^(a-1)`
    low: u64,
    /// `ℓ^a`
    modulus: u64,
    /// `(M / ℓ^a)^-1 mod ℓ^a`
    crt: u64,
    /// mixed-radix stride of this component in the canonical key
    stride: u64,
}

/// Per-conductor data for canonical reduction.
#[derive(Debug)]
pub struct RootBasis {
    m: u64,
    comps: Vec<Component>,
}

fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} not invertible mod {m}");
    t.rem_euclid(m as i128) as u64
}

fn bases() -> &'static Mutex<HashMap<u64, Arc<RootBasis>>> {
    static B: OnceLock<Mutex<HashMap<u64, Arc<RootBasis>>>> = OnceLock::new();
    B.get_or_init(Default::default)
}

impl RootBasis {
    pub fn get(m: u64) -> Arc<RootBasis> {
        if let Some(b) = bases().lock().unwrap().get(&m) {
            return b.clone();
        }
        let mut stride = 1;
        let comps = prime_powers(m)
            .into_iter()
            .map(|(ell, a)| {
                let modulus = ell.pow(a);
                let c = Component { ell, low: modulus / ell, modulus, crt: inv_mod((m / modulus) % modulus, modulus), stride };
                stride *= modulus;
                c
            })
            .collect();
        let b = Arc::new(RootBasis { m, comps });
        bases().lock().unwrap().insert(m, b.clone());
        b
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Mixed-radix key of `ζ_M^e`.
    fn key(&self, e: u64) -> u64 {
        self.comps.iter().map(|c| ((e % c.modulus) * c.crt % c.modulus) * c.stride).sum()
    }

    /// Canonical coefficients, sorted by key, zeros removed.
    pub fn canonical(&self, terms: &[(u64, i64)]) -> Vec<(u64, i64)> {
        let cur: Vec<(u64, i64)> = terms.iter().filter(|t| t.1 != 0).map(|&(e, c)| (self.key(e % self.m), c)).collect();
        // Merging before expansion keeps cancelling pairs from multiplying out.
        let mut cur = merge(cur);
        for comp in &self.comps {
            let mut next = Vec::with_capacity(cur.len());
            for (key, c) in cur {
                let x = (key / comp.stride) % comp.modulus;
                let top = x / comp.low;
                if top == comp.ell - 1 {
                    let rest = key - x * comp.stride;
                    let base = x % comp.low;
                    for t in 0..comp.ell - 1 {
                        next.push((rest + (base + t * comp.low) * comp.stride, -c));
                    }
                } else {
                    next.push((key, c));
                }
            }
            cur = next;
        }
        merge(cur)
    }

    pub fn is_zero(&self, terms: &[(u64, i64)]) -> bool {
        self.canonical(terms).is_empty()
    }
}

/// Sorts by key and sums equal keys, dropping zeros.
fn merge(mut v: Vec<(u64, i64)>) -> Vec<(u64, i64)> {
    v.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(u64, i64)> = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// `Σ c·ζ_M^e`, stored as unsorted `(e mod M, c)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSum {
    m: u64,
    terms: Vec<(u64, i64)>,
}

impl RootSum {
    pub fn new(m: u64) -> Self {
        RootSum { m, terms: Vec::new() }
    }

    pub fn from_terms(m: u64, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut s = Self::new(m);
        for (e, c) in terms {
            s.push(e, c);
        }
        s
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    pub fn push(&mut self, e: i64, c: i64) {
        if c != 0 {
            self.terms.push((e.rem_euclid(self.m as i64) as u64, c));
        }
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &RootSum, k: i64) {
        debug_assert_eq!(self.m, other.m);
        if k == 0 {
            return;
        }
        self.terms.extend(other.terms.iter().map(|&(e, c)| (e, c * k)));
    }

    pub fn is_zero(&self) -> bool {
        RootBasis::get(self.m).is_zero(&self.terms)
    }

    pub fn to_cyc(&self) -> CycNumber {
        CycNumber::from_exponents(self.m, self.terms.iter().map(|&(e, c)| (e as i64, Rational::from_integer(c.into()))))
    }

    pub fn ball(&self, prec: u32) -> ComplexBall {
        let mut acc = ComplexBall::zero(prec);
        for &(e, c) in &self.terms {
            let z = ComplexBall::root_of_unity(e as i64, self.m, prec);
            acc = acc + z.scale(&Ball::from_int(c, prec));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_sums() {
        // 1 + ζ_3 + ζ_3^2 = 0 inside Q(ζ_12)
        assert!(RootSum::from_terms(12, [(0, 1), (4, 1), (8, 1)]).is_zero());
        // ζ_8^4 = -1
        assert!(RootSum::from_terms(8, [(4, 1), (0, 1)]).is_zero());
        assert!(!RootSum::from_terms(8, [(1, 1), (7, 1)]).is_zero());
        // a mixed vanishing sum in Q(ζ_30): (1+ζ_5+…+ζ_5^4)·ζ_3 - (ζ_2 + 1)
        let mut s = RootSum::new(30);
        for j in 0..5 {
            s.push(6 * j + 10, 1);
        }
        s.push(15, 1);
        s.push(0, 1);
        assert!(s.is_zero());
    }

    #[test]
    fn agrees_with_power_basis() {
        // Random-ish sums: canonical zero test matches reduction mod Φ_M.
        for m in [12u64, 20, 36, 60, 66, 105] {
            let mut seed = 12345u64 + m;
            for _ in 0..20 {
                let mut s = RootSum::new(m);
                for _ in 0..6 {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let e = (seed >> 33) % m;
                    let c = ((seed >> 20) % 5) as i64 - 2;
                    s.push(e as i64, c);
                }
                let mut neg = s.clone();
                neg.add_scaled(&s, -1);
                assert!(neg.is_zero());
                assert_eq!(s.is_zero(), s.to_cyc().is_zero(), "m = {m}, {s:?}");
            }
        }
    }

    #[test]
    fn canonical_form_distinguishes() {
        let b = RootBasis::get(60);
        let x = b.canonical(&[(1, 1), (11, 2)]);
        let y = b.canonical(&[(1, 1), (11, 2), (0, 1), (20, 1), (40, 1)]);
        assert_eq!(x, y);
    }
}
