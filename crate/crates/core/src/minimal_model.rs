//! Minimal models `M(p,q)`: Kac labels, the fold symmetry, central charge and
//! conformal weights.
//!
//! Labels are `(r, s)` with `1 <= r <= q-1` and `1 <= s <= p-1`, and
//! `h_{r,s} = ((rp - sq)^2 - (p-q)^2) / 4pq`. The Kac symmetry identifies
//! `(r, s)` with `(q-r, p-s)`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exact::rational::{int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KacLabel {
    pub r: u32,
    pub s: u32,
}

impl KacLabel {
    pub const VACUUM: KacLabel = KacLabel { r: 1, s: 1 };

    pub fn new(r: u32, s: u32) -> Self {
        KacLabel { r, s }
    }
}

impl fmt::Display for KacLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinimalModel {
    p: u32,
    q: u32,
    #[serde(with = "crate::exact::rational::as_string")]
    c: Rational,
}

/// `1 - 6(p-q)^2 / pq`.
pub fn central_charge(p: u32, q: u32) -> Result<Rational> {
    validate(p, q)?;
    let (p, q) = (p as i64, q as i64);
    Ok(int(1) - rat(6 * (p - q) * (p - q), p * q))
}

fn validate(p: u32, q: u32) -> Result<()> {
    if p < 2 || q < 2 {
        return domain(format!("minimal model needs p, q >= 2, got ({p},{q})"));
    }
    if p.gcd(&q) != 1 {
        return domain(format!("minimal model needs coprime p, q, got ({p},{q})"));
    }
    Ok(())
}

impl MinimalModel {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        let c = central_charge(p, q)?;
        Ok(MinimalModel { p, q, c })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn central_charge(&self) -> &Rational {
        &self.c
    }

    /// Number of fold orbits, `(p-1)(q-1)/2`.
    pub fn num_primaries(&self) -> usize {
        ((self.p - 1) * (self.q - 1) / 2) as usize
    }

    pub fn is_unitary(&self) -> bool {
        self.p.abs_diff(self.q) == 1
    }

    pub fn in_bounds(&self, r: u32, s: u32) -> bool {
        (1..self.q).contains(&r) && (1..self.p).contains(&s)
    }

    pub fn label(&self, r: u32, s: u32) -> Result<KacLabel> {
        if !self.in_bounds(r, s) {
            return domain(format!("label ({r},{s}) outside 1<=r<={}, 1<=s<={} for M({},{})", self.q - 1, self.p - 1, self.p, self.q));
        }
        Ok(KacLabel { r, s })
    }

    /// The Kac partner `(q-r, p-s)`.
    pub fn partner(&self, l: KacLabel) -> KacLabel {
        KacLabel { r: self.q - l.r, s: self.p - l.s }
    }

    /// `rp - sq`; the weight depends only on its square.
    pub fn kac_offset(&self, l: KacLabel) -> i64 {
        l.r as i64 * self.p as i64 - l.s as i64 * self.q as i64
    }

    pub fn conformal_weight(&self, l: KacLabel) -> Result<Rational> {
        self.label(l.r, l.s)?;
        Ok(self.weight_unchecked(l))
    }

    pub(crate) fn weight_unchecked(&self, l: KacLabel) -> Rational {
        let (p, q) = (self.p as i64, self.q as i64);
        let a = self.kac_offset(l);
        rat(a * a - (p - q) * (p - q), 4 * p * q)
    }

    /// Canonical representative of `{(r,s), (q-r,p-s)}`.
    ///
    /// Both members share a weight, so the choice is a pure tie-break: the
    /// member with `r + s` even when exactly one has it (always the case for
    /// `p + q` odd), otherwise the lexicographically smaller one.
    pub fn fold(&self, r: u32, s: u32) -> Result<KacLabel> {
        let a = self.label(r, s)?;
        Ok(self.fold_label(a))
    }

    pub(crate) fn fold_label(&self, a: KacLabel) -> KacLabel {
        let b = self.partner(a);
        let even = |l: KacLabel| (l.r + l.s).is_multiple_of(2);
        match (even(a), even(b)) {
            (true, false) => a,
            (false, true) => b,
            _ => a.min(b),
        }
    }

    /// One representative per fold orbit: vacuum first, then ascending
    /// weight, ties broken by `(r, s)`.
    pub fn kac_transversal(&self) -> Vec<KacLabel> {
        let mut reps: Vec<(Rational, KacLabel)> = Vec::with_capacity(self.num_primaries());
        for r in 1..self.q {
            for s in 1..self.p {
                let l = KacLabel { r, s };
                if self.fold_label(l) == l {
                    reps.push((self.weight_unchecked(l), l));
                }
            }
        }
        reps.sort_by(|x, y| {
            let vx = x.1 == KacLabel::VACUUM;
            let vy = y.1 == KacLabel::VACUUM;
            vy.cmp(&vx).then_with(|| x.0.cmp(&y.0)).then_with(|| x.1.cmp(&y.1))
        });
        debug_assert_eq!(reps.len(), self.num_primaries());
        reps.into_iter().map(|(_, l)| l).collect()
    }

    /// `c - 24 h_min`.
    pub fn effective_central_charge(&self) -> Rational {
        let hmin = self.min_weight_label();
        &self.c - int(24) * self.weight_unchecked(hmin)
    }

    /// The label of minimal weight.
    pub fn min_weight_label(&self) -> KacLabel {
        self.kac_transversal()
            .into_iter()
            .min_by(|a, b| self.weight_unchecked(*a).cmp(&self.weight_unchecked(*b)).then(a.cmp(b)))
            .expect("transversal is never empty")
    }
}

impl fmt::Display for MinimalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.p, self.q)
    }
}

/// The transversal of a model together with a label → index map.
#[derive(Debug, Clone)]
pub struct Transversal {
    pub model: MinimalModel,
    pub labels: Vec<KacLabel>,
    index: Vec<u32>,
}

impl Transversal {
    pub fn new(model: &MinimalModel) -> Self {
        let labels = model.kac_transversal();
        let (p, q) = (model.p() as usize, model.q() as usize);
        let mut index = vec![u32::MAX; q * p];
        for r in 1..q {
            for s in 1..p {
                let l = model.fold_label(KacLabel::new(r as u32, s as u32));
                let i = labels.iter().position(|x| *x == l).expect("fold lands in transversal");
                index[r * p + s] = i as u32;
            }
        }
        Transversal { model: model.clone(), labels, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Transversal index of any in-bounds label (folding as needed).
    pub fn index_of(&self, r: u32, s: u32) -> Result<usize> {
        self.model.label(r, s)?;
        Ok(self.index[(r * self.model.p() + s) as usize] as usize)
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.labels.iter().map(|l| self.model.weight_unchecked(*l)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, q: u32) -> MinimalModel {
        MinimalModel::new(p, q).unwrap()
    }

    #[test]
    fn central_charges() {
        assert_eq!(central_charge(4, 3).unwrap(), rat(1, 2));
        assert_eq!(central_charge(5, 2).unwrap(), rat(-22, 5));
        assert_eq!(central_charge(7, 5).unwrap(), central_charge(5, 7).unwrap());
        assert!(central_charge(4, 2).is_err());
        assert!(central_charge(1, 3).is_err());
        assert!(central_charge(6, 6).is_err());
    }

    #[test]
    fn weights() {
        let ising = m(4, 3);
        assert_eq!(ising.conformal_weight(KacLabel::new(2, 2)).unwrap(), rat(1, 16));
        assert_eq!(m(12, 11).conformal_weight(KacLabel::new(1, 7)).unwrap(), int(8));
        for (p, q) in [(4, 3), (5, 2), (7, 4), (11, 6)] {
            assert_eq!(m(p, q).conformal_weight(KacLabel::VACUUM).unwrap(), int(0));
        }
        assert!(ising.conformal_weight(KacLabel::new(3, 1)).is_err());
        assert!(ising.conformal_weight(KacLabel::new(1, 4)).is_err());
    }

    #[test]
    fn folding() {
        let ising = m(4, 3);
        assert_eq!(ising.fold(2, 2).unwrap(), ising.fold(1, 2).unwrap());
        assert_eq!(ising.fold(1, 2).unwrap(), KacLabel::new(2, 2));
        let ly = m(5, 2);
        assert_eq!(ly.fold(1, 4).unwrap(), ly.fold(1, 1).unwrap());
        let model = m(6, 5);
        for r in 1..5 {
            for s in 1..6 {
                let f = model.fold(r, s).unwrap();
                assert_eq!(model.fold(f.r, f.s).unwrap(), f);
            }
        }
        assert!(ly.fold(2, 1).is_err());
    }

    #[test]
    fn transversals() {
        let ising = m(4, 3);
        assert_eq!(ising.kac_transversal(), vec![KacLabel::new(1, 1), KacLabel::new(2, 2), KacLabel::new(1, 3)]);
        let ly = m(5, 2);
        assert_eq!(ly.kac_transversal(), vec![KacLabel::new(1, 1), KacLabel::new(1, 3)]);
        assert_eq!(ly.conformal_weight(KacLabel::new(1, 3)).unwrap(), rat(-1, 5));
        assert_eq!(m(12, 11).kac_transversal().len(), 55);
    }

    #[test]
    fn effective_central_charges() {
        assert_eq!(m(5, 2).effective_central_charge(), rat(2, 5));
        assert_eq!(m(4, 3).effective_central_charge(), rat(1, 2));
        // (5,3): c = -3/5, h_min = -1/20 at (1,2)~(2,3)
        let m53 = m(5, 3);
        let hmin = m53.conformal_weight(m53.min_weight_label()).unwrap();
        assert_eq!(hmin, rat(-1, 20));
        assert_eq!(m53.effective_central_charge(), rat(-3, 5) + rat(24, 20));
    }

    #[test]
    fn transversal_index() {
        let t = Transversal::new(&m(4, 3));
        assert_eq!(t.index_of(1, 1).unwrap(), 0);
        assert_eq!(t.index_of(2, 3).unwrap(), 0);
        assert_eq!(t.index_of(1, 2).unwrap(), 1);
        assert_eq!(t.index_of(2, 1).unwrap(), 2);
    }
}
