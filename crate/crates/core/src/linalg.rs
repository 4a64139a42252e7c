//! Exact kernels over Q by incremental fraction-free row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Divides out the gcd of the entries and makes the leading entry positive.
fn primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let neg = row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if neg {
        g = -g;
    }
    if !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Reduced row echelon form over Z, built one equation at a time.
///
/// Every stored row is primitive, has a positive pivot, and is zero in the
/// pivot columns of all other rows.
#[derive(Debug, Clone)]
pub struct RowReducer {
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds an equation `row · x = 0`. Returns true when the rank grew.
    pub fn push(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.ncols);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if row[pc].is_zero() {
                continue;
            }
            // row <- r[pc]·row - row[pc]·r clears column pc.
            let (a, b) = (r[pc].clone(), row[pc].clone());
            for (x, y) in row.iter_mut().zip(r) {
                *x = &a * &*x - &b * y;
            }
            primitive(&mut row);
        }
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        primitive(&mut row);
        for r in self.rows.iter_mut() {
            if r[pc].is_zero() {
                continue;
            }
            let (a, b) = (row[pc].clone(), r[pc].clone());
            for (x, y) in r.iter_mut().zip(&row) {
                *x = &a * &*x - &b * y;
            }
            primitive(r);
        }
        self.rows.push(row);
        self.pivots.push(pc);
        true
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel basis as primitive integer vectors, one per free column `f`,
    /// each nonzero at `f` and zero at every other free column.
    pub fn kernel(&self) -> Vec<(usize, Vec<BigInt>)> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                // x_f = L, x_pc = -L·r[f]/r[pc] with L the lcm of the pivots involved.
                let mut l = BigInt::one();
                for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                    if !r[f].is_zero() {
                        l = l.lcm(&r[pc]);
                    }
                }
                let mut v = vec![BigInt::zero(); self.ncols];
                v[f] = l.clone();
                for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                    if !r[f].is_zero() {
                        v[pc] = -(&l / &r[pc]) * &r[f];
                    }
                }
                primitive(&mut v);
                (f, v)
            })
            .collect()
    }
}

const MOD_P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Echelon form modulo the prime `2^61 - 1`, used to screen out dependent
/// equations cheaply before exact elimination. An equation independent
/// modulo p is independent over Q; the converse can fail, so callers must
/// confirm the exact kernel separately.
#[derive(Debug, Clone)]
pub struct ModReducer {
    ncols: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModReducer {
    pub fn new(ncols: usize) -> Self {
        ModReducer { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns true when `row` is independent of the rows seen so far.
    pub fn push(&mut self, row: &[i64]) -> bool {
        let mut v: Vec<u64> = row.iter().map(|&x| x.rem_euclid(MOD_P as i64) as u64).collect();
        for (pc, r) in &self.rows {
            let f = v[*pc];
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(r) {
                if y != 0 {
                    *x = (*x + MOD_P - mulmod(f, y)) % MOD_P;
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = powmod(v[pc], MOD_P - 2);
        for x in v.iter_mut() {
            *x = mulmod(*x, inv);
        }
        // Keep the stored rows fully reduced at every pivot.
        for (_, r) in self.rows.iter_mut() {
            let f = r[pc];
            if f == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(&v) {
                if y != 0 {
                    *x = (*x + MOD_P - mulmod(f, y)) % MOD_P;
                }
            }
        }
        debug_assert_eq!(v.len(), self.ncols);
        self.rows.push((pc, v));
        true
    }
}

/// Kernel of an integer matrix given by rows.
pub fn kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut red = RowReducer::new(ncols);
    for r in rows {
        red.push(r.iter().map(|&x| BigInt::from(x)).collect());
    }
    red.kernel().into_iter().map(|(_, v)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dot(a: &[i64], b: &[BigInt]) -> BigInt {
        a.iter().zip(b).map(|(&x, y)| BigInt::from(x) * y).sum()
    }

    #[test]
    fn simple_kernel() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(&rows[0], v).is_zero());
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let rows = vec![vec![2, 1], vec![1, 3]];
        assert!(kernel(&rows, 2).is_empty());
    }

    #[test]
    fn mod_reducer_detects_dependence() {
        let mut m = ModReducer::new(3);
        assert!(m.push(&[1, 2, 3]));
        assert!(!m.push(&[-2, -4, -6]));
        assert!(m.push(&[0, 1, 0]));
        assert!(!m.push(&[1, 5, 3]));
        assert_eq!(m.rank(), 2);
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(rows in prop::collection::vec(prop::collection::vec(-4i64..5, 6), 0..6)) {
            let mut red = RowReducer::new(6);
            for r in &rows {
                red.push(r.iter().map(|&x| BigInt::from(x)).collect());
            }
            let k = red.kernel();
            prop_assert_eq!(k.len() + red.rank(), 6);
            for (_, v) in &k {
                prop_assert!(v.iter().any(|x| !x.is_zero()));
                for r in &rows {
                    prop_assert!(dot(r, v).is_zero());
                }
            }
        }
    }
}
