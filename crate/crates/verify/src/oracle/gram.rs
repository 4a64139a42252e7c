//! Graded dimensions of irreducible Virasoro highest-weight modules from
//! ranks of the Shapovalov form on the Verma module.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;
/// `L_{-n1} L_{-n2} … |h>` with `n1 >= n2 >= … >= 1`.
type Mono = Vec<u32>;
type Vector = BTreeMap<Mono, Q>;

pub struct Verma {
    h: Q,
    c: Q,
    memo: HashMap<(i64, Mono), Vector>,
}

fn add_scaled(into: &mut Vector, from: &Vector, k: &Q) {
    for (m, v) in from {
        let e = into.entry(m.clone()).or_insert_with(Q::zero);
        *e += v * k;
        if e.is_zero() {
            into.remove(m);
        }
    }
}

impl Verma {
    pub fn new(h: Q, c: Q) -> Self {
        Verma { h, c, memo: HashMap::new() }
    }

    /// `L_k` applied to a PBW monomial, returned in PBW form.
    fn apply(&mut self, k: i64, m: &Mono) -> Vector {
        if let Some(v) = self.memo.get(&(k, m.clone())) {
            return v.clone();
        }
        let mut out = Vector::new();
        if k == 0 {
            let level: u32 = m.iter().sum();
            let e = &self.h + Q::from_integer(BigInt::from(level));
            if !e.is_zero() {
                out.insert(m.clone(), e);
            }
        } else if k < 0 {
            let j = (-k) as u32;
            if m.is_empty() || j >= m[0] {
                let mut mm = vec![j];
                mm.extend_from_slice(m);
                out.insert(mm, Q::one());
            } else {
                // L_{-j} L_{-n} rest = L_{-n} L_{-j} rest + (n - j) L_{-(j+n)} rest
                let n = m[0];
                let rest: Mono = m[1..].to_vec();
                let inner = self.apply(k, &rest);
                for (t, v) in inner {
                    let moved = self.apply(-(n as i64), &t);
                    add_scaled(&mut out, &moved, &v);
                }
                let comm = self.apply(-((j + n) as i64), &rest);
                add_scaled(&mut out, &comm, &Q::from_integer(BigInt::from(n as i64 - j as i64)));
            }
        } else if !m.is_empty() {
            // L_k L_{-n} rest = L_{-n} L_k rest + (k+n) L_{k-n} rest + δ_{k,n} c/12 (k³-k) rest
            let n = m[0] as i64;
            let rest: Mono = m[1..].to_vec();
            let inner = self.apply(k, &rest);
            for (t, v) in inner {
                let moved = self.apply(-n, &t);
                add_scaled(&mut out, &moved, &v);
            }
            let comm = self.apply(k - n, &rest);
            add_scaled(&mut out, &comm, &Q::from_integer(BigInt::from(k + n)));
            if k == n {
                let central = &self.c * Q::new(BigInt::from(k * k * k - k), BigInt::from(12));
                if !central.is_zero() {
                    let mut single = Vector::new();
                    single.insert(rest, Q::one());
                    add_scaled(&mut out, &single, &central);
                }
            }
        }
        self.memo.insert((k, m.clone()), out.clone());
        out
    }

    /// `<λ|μ>` with `<h|h> = 1`.
    pub fn inner(&mut self, lambda: &Mono, mu: &Mono) -> Q {
        let mut state = Vector::new();
        state.insert(mu.clone(), Q::one());
        // (L_{-a1} … L_{-am})† = L_{am} … L_{a1}: L_{a1} acts first.
        for &a in lambda {
            let mut next = Vector::new();
            for (t, v) in &state {
                let r = self.apply(a as i64, t);
                add_scaled(&mut next, &r, v);
            }
            state = next;
        }
        state.get(&Vec::new()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn gram(&mut self, level: u32) -> Vec<Vec<Q>> {
        let basis = partitions(level);
        basis.iter().map(|a| basis.iter().map(|b| self.inner(a, b)).collect()).collect()
    }
}

/// Partitions of `n` as non-increasing part lists.
pub fn partitions(n: u32) -> Vec<Mono> {
    fn go(n: u32, max: u32, prefix: &mut Mono, out: &mut Vec<Mono>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Rank over Q by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Graded dimensions of `L(c, h)` at levels `0..=max_level`.
pub fn graded_dimensions(h: Q, c: Q, max_level: u32) -> Vec<usize> {
    let mut v = Verma::new(h, c);
    (0..=max_level).map(|n| rank(v.gram(n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn level_two_gram() {
        // Basis L_{-2}, L_{-1}²: [[4h + c/2, 6h], [6h, 4h(2h+1)]].
        let (h, c) = (q(1, 3), q(2, 5));
        let g = Verma::new(h.clone(), c.clone()).gram(2);
        assert_eq!(g[0][0], q(4, 1) * &h + &c / q(2, 1));
        assert_eq!(g[0][1], q(6, 1) * &h);
        assert_eq!(g[1][1], q(4, 1) * &h * (q(2, 1) * &h + q(1, 1)));
    }

    #[test]
    fn generic_weight_has_full_rank() {
        let d = graded_dimensions(q(1, 7), q(3, 11), 5);
        assert_eq!(d, vec![1, 1, 2, 3, 5, 7]);
    }

    #[test]
    fn ising_vacuum() {
        assert_eq!(graded_dimensions(q(0, 1), q(1, 2), 6), vec![1, 0, 1, 1, 2, 2, 3]);
    }
}
