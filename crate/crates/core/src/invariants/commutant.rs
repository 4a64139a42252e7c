//! The rational commutant of {Ŝ, T} and bounded enumeration of its
//! nonnegative integer points.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{verify_with, InvariantMatrix};
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{Ball, IntCyc, IntField};
use crate::linalg::{ModReducer, RowReducer};
use crate::minimal_model::{KacLabel, MinimalModel};
use crate::modular_data::{effective_vacuum_of, SMatrixHat};

/// Dense `d×d` rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMatrix {
    pub dim: usize,
    #[serde(with = "rational::vec_as_string")]
    pub entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }
}

/// Kernel of the (M3) system in coordinates on the T-allowed positions.
struct Commutant {
    positions: Vec<(usize, usize)>,
    /// `(free unknown, primitive integer kernel vector)`
    basis: Vec<(usize, Vec<BigInt>)>,
}

fn t_allowed(model: &MinimalModel, labels: &[KacLabel]) -> Vec<(usize, usize)> {
    let h: Vec<Rational> = labels.iter().map(|&l| model.conformal_weight(l).expect("transversal label")).collect();
    let d = labels.len();
    let mut pos: Vec<(usize, usize)> =
        (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).filter(|&(i, j)| rational::is_integer(&(&h[i] - &h[j]))).collect();
    // Keep the vacuum entry last so elimination tends to leave it free.
    pos.retain(|&p| p != (0, 0));
    pos.push((0, 0));
    pos
}

/// Exact test that the integer matrix on `positions` commutes with `A = 4Ŝ`.
fn commutes_exactly(field: &IntField, a: &[IntCyc], d: usize, positions: &[(usize, usize)], v: &[BigInt]) -> bool {
    let Some(x) = v.iter().map(|b| b.to_i128()).collect::<Option<Vec<i128>>>() else {
        return false;
    };
    let mut rows: Vec<Vec<(usize, i128)>> = vec![Vec::new(); d];
    let mut cols: Vec<Vec<(usize, i128)>> = vec![Vec::new(); d];
    for (&(i, j), &val) in positions.iter().zip(&x) {
        if val != 0 {
            rows[i].push((j, val));
            cols[j].push((i, val));
        }
    }
    (0..d).all(|i| {
        (0..d).all(|j| {
            let mut acc = field.zero();
            for &(b, val) in &rows[i] {
                field.add_assign(&mut acc, &field.scale(&a[b * d + j], val));
            }
            for &(k, val) in &cols[j] {
                field.add_assign(&mut acc, &field.scale(&a[i * d + k], -val));
            }
            acc.is_zero()
        })
    })
}

/// Floating screen before the exact test.
fn commutes_numerically(sf: &[f64], d: usize, positions: &[(usize, usize)], v: &[BigInt]) -> bool {
    let mut x = vec![0f64; d * d];
    for (&(i, j), b) in positions.iter().zip(v) {
        x[i * d + j] = b.to_f64().unwrap_or(f64::INFINITY);
    }
    let scale = x.iter().fold(1f64, |m, v| m.max(v.abs()));
    (0..d).all(|i| {
        (0..d).all(|j| {
            let c: f64 = (0..d).map(|k| x[i * d + k] * sf[k * d + j] - sf[i * d + k] * x[k * d + j]).sum();
            c.abs() <= 1e-9 * scale * d as f64
        })
    })
}

fn commutant(s: &SMatrixHat) -> Commutant {
    let model = s.model();
    let labels = s.labels();
    let d = s.dim();
    let positions = t_allowed(model, labels);
    let n = positions.len();
    let mut index = vec![usize::MAX; d * d];
    for (u, &(i, j)) in positions.iter().enumerate() {
        index[i * d + j] = u;
    }
    let field = IntField::new(s.conductor());
    let a = s.dense_int(&field);
    let sf = s.s_float();
    let phi = field.degree();

    let equations = |i: usize, j: usize| -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0i64; n]; phi];
        for b in 0..d {
            let u = index[i * d + b];
            if u != usize::MAX {
                for (t, &c) in a[b * d + j].coeffs.iter().enumerate() {
                    rows[t][u] += c as i64;
                }
            }
        }
        for k in 0..d {
            let u = index[k * d + j];
            if u != usize::MAX {
                for (t, &c) in a[i * d + k].coeffs.iter().enumerate() {
                    rows[t][u] -= c as i64;
                }
            }
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
        rows
    };

    let mut modred = ModReducer::new(n);
    let mut exact = RowReducer::new(n);
    let mut last_checked = usize::MAX;
    let confirm = |exact: &RowReducer| -> Option<Vec<(usize, Vec<BigInt>)>> {
        let k = exact.kernel();
        let ok = k.iter().all(|(_, v)| commutes_numerically(&sf, d, &positions, v))
            && k.iter().all(|(_, v)| commutes_exactly(&field, &a, d, &positions, v));
        ok.then_some(k)
    };
    for i in 0..d {
        for j in 0..d {
            for eq in equations(i, j) {
                if modred.push(&eq) {
                    exact.push(eq.into_iter().map(BigInt::from).collect());
                }
            }
        }
        if exact.rank() != last_checked {
            last_checked = exact.rank();
            if let Some(basis) = confirm(&exact) {
                return Commutant { positions, basis };
            }
        }
    }
    if let Some(basis) = confirm(&exact) {
        return Commutant { positions, basis };
    }
    // The modular screen dropped an equation that is independent over Q.
    let mut exact = RowReducer::new(n);
    for i in 0..d {
        for j in 0..d {
            for eq in equations(i, j) {
                exact.push(eq.into_iter().map(BigInt::from).collect());
            }
        }
    }
    Commutant { positions, basis: exact.kernel() }
}

/// Basis of `{X ∈ Q^{d×d} : XT = TX, XŜ = ŜX}`, each element scaled so its
/// distinguished free entry is 1.
pub fn commutant_basis(model: &MinimalModel) -> Result<Vec<RationalMatrix>> {
    let s = SMatrixHat::build(model)?;
    let c = commutant(&s);
    let d = s.dim();
    Ok(c.basis
        .iter()
        .map(|(f, v)| {
            let lead = Rational::from_integer(v[*f].clone());
            let mut entries = vec![Rational::zero(); d * d];
            for (&(i, j), x) in c.positions.iter().zip(v) {
                entries[i * d + j] = Rational::from_integer(x.clone()) / &lead;
            }
            RationalMatrix { dim: d, entries }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub model: MinimalModel,
    pub cap: u32,
    pub effective_vacuum: KacLabel,
    pub commutant_dim: usize,
    /// True when every commutant element has `X_oo = X_00`, so `X_oo = 1`
    /// for any invariant and the cap cannot bind.
    pub complete: bool,
    /// True when the enumeration hit its resource limit.
    pub truncated: bool,
    pub candidates: u64,
    pub invariants: Vec<InvariantMatrix>,
    pub closed_under_transpose: bool,
}

/// Candidate limit for [`classify`].
pub const DEFAULT_CANDIDATE_LIMIT: u64 = 20_000_000;

/// All modular invariants with `X_oo <= cap` (or all of them, when the
/// commutant forces `X_oo = 1`).
pub fn classify(model: &MinimalModel, cap: u32) -> Result<Classification> {
    classify_with_limit(model, cap, DEFAULT_CANDIDATE_LIMIT)
}

pub fn classify_with_limit(model: &MinimalModel, cap: u32, limit: u64) -> Result<Classification> {
    if cap == 0 {
        return Err(Error::Domain("cap must be positive".into()));
    }
    let s = SMatrixHat::build(model)?;
    let o = effective_vacuum_of(&s, 128)?;
    let c = commutant(&s);
    let d = s.dim();
    let k = c.basis.len();

    let forced = c.basis.iter().all(|(_, v)| {
        let at = |p: (usize, usize)| c.positions.iter().position(|&x| x == p).map(|u| v[u].clone());
        at((o, o)) == at((0, 0))
    });
    let xoo = if forced { 1 } else { cap as i64 };

    // X_ij · (8/pq)Ŝ_oi Ŝ_oj <= X_oo with every weight certified positive.
    let prec = 128;
    let s2 = Ball::from_rational(&s.scale_squared(), prec);
    let row: Vec<Ball> = (0..d).map(|j| s.ball(o, j, prec)).collect();
    let bound = |i: usize, j: usize| -> i64 {
        let w = s2.clone() * row[i].clone() * row[j].clone();
        let lo = w.bounds().0;
        debug_assert!(lo > Rational::zero());
        let b = Rational::from_integer(BigInt::from(xoo)) / lo;
        b.floor().to_integer().to_i64().unwrap_or(i64::MAX)
    };

    // Integer form: X·D = Σ x_k W_k with x_k the free entries.
    let leads: Vec<BigInt> = c.basis.iter().map(|(f, v)| v[*f].clone()).collect();
    let den = leads.iter().fold(BigInt::one(), |l, x| l.lcm(x));
    let w: Vec<Vec<i128>> = c
        .basis
        .iter()
        .zip(&leads)
        .map(|((_, v), l)| v.iter().map(|x| (x * (&den / l)).to_i128().expect("basis fits in i128")).collect())
        .collect();
    let den = den.to_i128().expect("denominator fits in i128");
    let ranges: Vec<i64> = c
        .basis
        .iter()
        .map(|(f, _)| {
            let (i, j) = c.positions[*f];
            if (i, j) == (0, 0) {
                1
            } else {
                bound(i, j)
            }
        })
        .collect();
    let lows: Vec<i64> = c.basis.iter().map(|(f, _)| if c.positions[*f] == (0, 0) { 1 } else { 0 }).collect();
    let pos_bounds: Vec<i64> = c.positions.iter().map(|&(i, j)| bound(i, j)).collect();

    let mut found = BTreeSet::new();
    let mut candidates: u64 = 0;
    let mut truncated = false;
    let mut x: Vec<i64> = lows.clone();
    let n = c.positions.len();
    let mut acc = vec![0i128; n];
    'outer: loop {
        if candidates >= limit {
            truncated = true;
            break;
        }
        candidates += 1;
        acc.iter_mut().for_each(|a| *a = 0);
        for (kk, &xv) in x.iter().enumerate() {
            if xv != 0 {
                for (a, &wv) in acc.iter_mut().zip(&w[kk]) {
                    *a += wv * xv as i128;
                }
            }
        }
        let ok = acc.iter().zip(&pos_bounds).zip(&c.positions).all(|((&a, &b), &p)| {
            a % den == 0 && a >= 0 && (a / den) as i64 <= b && (p != (0, 0) || a == den)
        });
        if ok {
            let mut e = vec![0i64; d * d];
            for (&(i, j), &a) in c.positions.iter().zip(&acc) {
                e[i * d + j] = (a / den) as i64;
            }
            found.insert(e);
        }
        // Odometer over the free coordinates.
        for kk in 0..k {
            if x[kk] < ranges[kk] {
                x[kk] += 1;
                continue 'outer;
            }
            x[kk] = lows[kk];
        }
        break;
    }

    let mut invariants = Vec::new();
    for e in found {
        let m = InvariantMatrix::new(model, e)?;
        let r = verify_with(&s, &m);
        if !r.pass() {
            return Err(Error::Assertion(format!("commutant point fails verification: {:?}", r.checks)));
        }
        invariants.push(m);
    }
    let id = InvariantMatrix::identity(model);
    invariants.sort_by_key(|m| (*m != id, m.entries().to_vec()));
    let closed = invariants.iter().all(|m| invariants.contains(&m.transpose()));
    Ok(Classification {
        model: model.clone(),
        cap,
        effective_vacuum: s.labels()[o],
        commutant_dim: k,
        complete: forced && !truncated,
        truncated,
        candidates,
        invariants,
        closed_under_transpose: closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{build_catalog, CatalogRow};

    fn m(p: u32, q: u32) -> MinimalModel {
        MinimalModel::new(p, q).unwrap()
    }

    #[test]
    fn commutant_dimensions() {
        assert_eq!(commutant_basis(&m(4, 3)).unwrap().len(), 1);
        assert_eq!(commutant_basis(&m(5, 2)).unwrap().len(), 1);
        assert!(commutant_basis(&m(6, 5)).unwrap().len() >= 2);
    }

    #[test]
    fn classify_small() {
        let c = classify(&m(4, 3), 4).unwrap();
        assert_eq!(c.invariants, vec![InvariantMatrix::identity(&m(4, 3))]);
        assert!(c.complete);
        let c = classify(&m(5, 2), 4).unwrap();
        assert_eq!(c.invariants.len(), 1);
        assert!(c.complete);
        let model = m(6, 5);
        let c = classify(&model, 4).unwrap();
        assert!(c.complete && c.closed_under_transpose);
        assert_eq!(c.invariants, vec![InvariantMatrix::identity(&model), build_catalog(&model, CatalogRow::DPOdd).unwrap()]);
    }

    #[test]
    fn truncation_is_reported() {
        let c = classify_with_limit(&m(6, 5), 4, 1).unwrap();
        assert!(c.truncated && !c.complete);
    }
}
