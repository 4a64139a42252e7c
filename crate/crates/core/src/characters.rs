//! Truncated q-series with exponents in `offset + Z≥0`, and minimal-model
//! characters built from the theta-difference formula over the Euler product.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, int, rat, Rational};
use crate::minimal_model::{KacLabel, MinimalModel};

/// `Σ_{n<=order} coeffs[n] · q^(offset+n)`; coefficients past `order` are
/// unknown, not zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuiseuxSeries {
    #[serde(with = "rational::as_string")]
    pub offset: Rational,
    #[serde(rename = "coefficients", with = "rational::vec_as_string")]
    pub coeffs: Vec<Rational>,
    pub order: usize,
}

impl PuiseuxSeries {
    pub fn new(offset: Rational, mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PuiseuxSeries { offset, coeffs, order }
    }

    pub fn zero(offset: Rational, order: usize) -> Self {
        Self::new(offset, Vec::new(), order)
    }

    /// `1·q^0`, trusted to `order`.
    pub fn one(order: usize) -> Self {
        Self::new(Rational::zero(), vec![int(1)], order)
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// Coefficient of `q^e`, if `e` lies in the trusted support.
    pub fn coeff_at(&self, e: &Rational) -> Option<&Rational> {
        let n = e - &self.offset;
        let n = rational::to_i64(&n)?;
        (0..=self.order as i64).contains(&n).then(|| &self.coeffs[n as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every trusted coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs.iter().all(|c| rational::is_integer(c) && !c.is_negative())
    }

    /// Drops trusted terms beyond `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::new(self.offset.clone(), self.coeffs[..=order].to_vec(), order)
    }

    /// Multiplies by `q^shift` for an integer shift >= 0 without changing the
    /// offset class: the result is re-expressed over `offset - shift`.
    fn realign(&self, new_offset: &Rational) -> (Vec<Rational>, usize) {
        let d = rational::to_i64(&(&self.offset - new_offset)).expect("integral shift") as usize;
        let mut c = vec![Rational::zero(); d];
        c.extend(self.coeffs.iter().cloned());
        (c, self.order + d)
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        let diff = &self.offset - &other.offset;
        if !rational::is_integer(&diff) {
            return Err(Error::IncongruentOffsets(
                rational::to_string(&self.offset),
                rational::to_string(&other.offset),
            ));
        }
        let off = if diff.is_negative() { self.offset.clone() } else { other.offset.clone() };
        let (a, oa) = self.realign(&off);
        let (b, ob) = other.realign(&off);
        let order = oa.min(ob);
        let s = int(sign);
        let coeffs = (0..=order).map(|n| &a[n] + &s * &b[n]).collect();
        Ok(Self::new(off, coeffs, order))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.offset.clone(), self.coeffs.iter().map(|c| c * k).collect(), self.order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(&self.offset + &other.offset, coeffs, order)
    }

    /// Strips leading zero coefficients into the offset.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) | None => self.clone(),
            Some(k) => Self::new(&self.offset + int(k as i64), self.coeffs[k..].to_vec(), self.order - k),
        }
    }

    /// `self / other`, trusted to the common order after normalizing both.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b = other.normalized();
        if b.coeffs[0].is_zero() {
            return Err(Error::DivisionByZero("series with no nonzero trusted coefficient".into()));
        }
        let a = self.normalized();
        let order = a.order.min(b.order);
        let lead = b.coeffs[0].clone();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = a.coeffs[n].clone();
            for k in 1..=n {
                if !b.coeffs[k].is_zero() {
                    acc -= &b.coeffs[k] * &out[n - k];
                }
            }
            out.push(acc / &lead);
        }
        Ok(Self::new(&a.offset - &b.offset, out, order))
    }

    /// Floating evaluation at real `0 < q < 1` of the truncated sum.
    pub fn eval(&self, q: f64) -> f64 {
        let lq = q.ln();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| rational::to_f64(c) * ((rational::to_f64(&self.offset) + n as f64) * lq).exp())
            .sum()
    }
}

/// Partition numbers `p(0..=n)` by Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(1);
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += &p[m - g1] * sign;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += &p[m - g2] * sign;
            }
        }
        p[m] = acc;
    }
    p
}

/// Character of `label` in `model`, trusted to `order` terms past
/// `h - c/24`.
pub fn character(model: &MinimalModel, label: KacLabel, order: usize) -> Result<PuiseuxSeries> {
    let h = model.conformal_weight(label)?;
    let (p, q) = (model.p() as i64, model.q() as i64);
    let pq = p * q;
    let (r, s) = (label.r as i64, label.s as i64);
    let a = r * p - s * q;
    let b = r * p + s * q;
    let offset = rat(a * a, 4 * pq) - rat(1, 24);
    debug_assert_eq!(offset, &h - model.central_charge() / int(24));
    let n = order as i64;

    // Theta difference: +q^(pqk²+ka) - q^(pqk²+kb+rs), both indices >= 0.
    // Each index is convex in k with its minimum near k = 0, so walking
    // outwards in both directions until both exceed N is exhaustive.
    let mut theta = vec![0i64; order + 1];
    for dir in [1i64, -1] {
        let mut k = if dir == 1 { 0 } else { -1 };
        loop {
            let n1 = pq * k * k + k * a;
            let n2 = pq * k * k + k * b + r * s;
            debug_assert!(n1 >= 0 && n2 >= 0);
            if n1 > n && n2 > n {
                break;
            }
            if n1 <= n {
                theta[n1 as usize] += 1;
            }
            if n2 <= n {
                theta[n2 as usize] -= 1;
            }
            k += dir;
        }
    }
    let parts = partition_numbers(order);
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (i, &t) in theta.iter().enumerate() {
        if t == 0 {
            continue;
        }
        for j in 0..=order - i {
            coeffs[i + j] += Rational::from_integer(&parts[j] * t);
        }
    }
    let ch = PuiseuxSeries::new(offset, coeffs, order);
    if ch.coeffs[0] != int(1) {
        return Err(Error::Assertion(format!("character of {label} does not start with 1")));
    }
    Ok(ch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, q: u32) -> MinimalModel {
        MinimalModel::new(p, q).unwrap()
    }

    fn ints(s: &PuiseuxSeries) -> Vec<i64> {
        s.coeffs.iter().map(|c| rational::to_i64(c).unwrap()).collect()
    }

    fn poly(offset: Rational, c: &[i64], order: usize) -> PuiseuxSeries {
        PuiseuxSeries::new(offset, c.iter().map(|&x| int(x)).collect(), order)
    }

    #[test]
    fn partitions() {
        let p = partition_numbers(10);
        let v: Vec<i64> = p.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(v, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn ising_vacuum() {
        let ch = character(&m(4, 3), KacLabel::new(1, 1), 6).unwrap();
        assert_eq!(ch.offset, rat(-1, 48));
        assert_eq!(ints(&ch), vec![1, 0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn lee_yang_offset_and_fold_invariance() {
        let ly = m(5, 2);
        let ch = character(&ly, KacLabel::new(1, 3), 10).unwrap();
        assert_eq!(ch.offset, rat(-1, 60));
        assert_eq!(ch, character(&ly, KacLabel::new(1, 2), 10).unwrap());
        // Rogers-Ramanujan products.
        assert_eq!(ints(&ch)[..8], [1, 1, 1, 1, 2, 2, 3, 3]);
        let vac = character(&ly, KacLabel::VACUUM, 10).unwrap();
        assert_eq!(ints(&vac)[..8], [1, 0, 1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn polynomial_identities() {
        let half = rat(1, 2);
        let a = poly(half.clone(), &[1, 1], 5);
        let b = poly(half.clone(), &[1, -1], 5);
        let prod = a.mul(&b);
        assert_eq!(prod, poly(int(1), &[1, 0, -1], 5));
        assert_eq!(prod.div(&b).unwrap(), a);
        assert_eq!(a.mul(&PuiseuxSeries::one(9)), a);
    }

    #[test]
    fn offsets_must_be_congruent() {
        let ising = m(4, 3);
        let v = character(&ising, KacLabel::new(1, 1), 5).unwrap();
        let s = character(&ising, KacLabel::new(2, 2), 5).unwrap();
        assert!(matches!(v.add(&s), Err(Error::IncongruentOffsets(..))));
        let e6 = m(12, 11);
        let a = character(&e6, KacLabel::new(1, 1), 10).unwrap();
        let b = character(&e6, KacLabel::new(1, 7), 10).unwrap();
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.offset, a.offset);
        assert_eq!(sum.order, 10);
    }

    #[test]
    fn add_tracks_order_after_shift() {
        let a = poly(int(0), &[1, 2, 3], 2);
        let b = poly(int(2), &[5, 7], 4);
        let s = a.add(&b).unwrap();
        assert_eq!(s.order, 2);
        assert_eq!(ints(&s), vec![1, 2, 8]);
    }

    #[test]
    fn truncation_is_sound() {
        let model = m(7, 4);
        for l in model.kac_transversal() {
            let a = character(&model, l, 20).unwrap();
            let b = character(&model, l, 30).unwrap();
            assert_eq!(a, b.truncate(20));
        }
    }

    #[test]
    fn serde_round_trip() {
        let ch = character(&m(5, 2), KacLabel::new(1, 1), 4).unwrap();
        let js = serde_json::to_string(&ch).unwrap();
        assert!(js.contains("\"offset\":\"11/60\""));
        let back: PuiseuxSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(back, ch);
    }
}
