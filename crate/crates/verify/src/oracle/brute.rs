//! Exhaustive search for small modular invariants with a floating S-matrix
//! built from the sine-product formula.

use num_rational::Ratio;

/// An invariant found by the search, indexed by the oracle's own labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Found {
    pub entries: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct BruteForce {
    pub p: u32,
    pub q: u32,
    /// Lexicographically smallest member of each fold orbit, sorted.
    pub labels: Vec<(u32, u32)>,
    pub found: Vec<Found>,
    pub visited: u64,
}

fn weight(p: i64, q: i64, r: i64, s: i64) -> Ratio<i64> {
    Ratio::new((r * p - s * q).pow(2) - (p - q).pow(2), 4 * p * q)
}

/// All nonnegative integer matrices with entries `<= max_entry`, `X_vac = 1`,
/// commuting with T and (numerically) with S.
pub fn search(p: u32, q: u32, max_entry: i64) -> BruteForce {
    let (pi, qi) = (p as i64, q as i64);
    let mut labels: Vec<(u32, u32)> = Vec::new();
    for r in 1..q {
        for s in 1..p {
            let l = (r, s).min((q - r, p - s));
            if !labels.contains(&l) {
                labels.push(l);
            }
        }
    }
    labels.sort();
    let d = labels.len();
    let h: Vec<Ratio<i64>> = labels.iter().map(|&(r, s)| weight(pi, qi, r as i64, s as i64)).collect();
    let pf = p as f64;
    let qf = q as f64;
    let s0 = (8.0 / (pf * qf)).sqrt();
    let smat: Vec<f64> = (0..d * d)
        .map(|k| {
            let (r, s) = labels[k / d];
            let (rho, sig) = labels[k % d];
            let sign = if (1 + s * rho + r * sig) % 2 == 0 { 1.0 } else { -1.0 };
            let x = std::f64::consts::PI * pf * (r * rho) as f64 / qf;
            let y = std::f64::consts::PI * qf * (s * sig) as f64 / pf;
            s0 * sign * x.sin() * y.sin()
        })
        .collect();
    let vac = labels.iter().position(|&l| l == (1, 1)).expect("vacuum label");
    let o = (0..d).min_by(|&a, &b| h[a].cmp(&h[b])).expect("nonempty");

    let mut positions: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter(|&(i, j)| (h[i] - h[j]).is_integer())
        .collect();
    let w = |&(i, j): &(usize, usize)| smat[o * d + i] * smat[j * d + o];
    positions.sort_by(|a, b| w(b).partial_cmp(&w(a)).expect("finite"));
    let weights: Vec<f64> = positions.iter().map(w).collect();

    let mut x = vec![0i64; d * d];
    let mut out = BruteForce { p, q, labels, found: Vec::new(), visited: 0 };
    // Σ_ij S_oi X_ij S_jo = X_oo <= max_entry, all terms >= 0.
    // The bound needs every term nonnegative; without that, search unpruned.
    let budget = if weights.iter().all(|&w| w > 0.0) { max_entry as f64 + 1e-9 } else { f64::INFINITY };
    dfs(0, 0.0, budget, max_entry, vac, d, &positions, &weights, &smat, &mut x, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    k: usize,
    spent: f64,
    budget: f64,
    max_entry: i64,
    vac: usize,
    d: usize,
    positions: &[(usize, usize)],
    weights: &[f64],
    smat: &[f64],
    x: &mut [i64],
    out: &mut BruteForce,
) {
    if k == positions.len() {
        out.visited += 1;
        if commutes(x, smat, d) {
            out.found.push(Found { entries: x.to_vec() });
        }
        return;
    }
    let (i, j) = positions[k];
    let range = if (i, j) == (vac, vac) { 1..=1 } else { 0..=max_entry };
    for v in range {
        let cost = spent + weights[k] * v as f64;
        if cost > budget {
            break;
        }
        x[i * d + j] = v;
        dfs(k + 1, cost, budget, max_entry, vac, d, positions, weights, smat, x, out);
    }
    x[i * d + j] = 0;
}

fn commutes(x: &[i64], s: &[f64], d: usize) -> bool {
    for i in 0..d {
        for j in 0..d {
            let mut c = 0.0;
            for k in 0..d {
                c += x[i * d + k] as f64 * s[k * d + j] - s[i * d + k] * x[k * d + j] as f64;
            }
            if c.abs() > 1e-9 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ising_has_only_the_diagonal() {
        let b = search(4, 3, 3);
        assert_eq!(b.found.len(), 1);
        let d = b.labels.len();
        for i in 0..d {
            for j in 0..d {
                assert_eq!(b.found[0].entries[i * d + j], (i == j) as i64);
            }
        }
    }
}
