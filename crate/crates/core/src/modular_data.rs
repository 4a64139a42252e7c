//! Exact S and T matrices of `M(p,q)` over the Kac transversal.
//!
//! The true S-matrix is `s0 · Ŝ` with `s0 = 2·sqrt(2/pq)`, and
//!
//! ```text
//! Ŝ_{(r,s),(ρ,σ)} = (-1)^(1+sρ+rσ) · sin(π p rρ / q) · sin(π q sσ / p)
//! ```
//!
//! Each sine product is `¼(ζ^k1 + ζ^-k1 - ζ^k2 - ζ^-k2)` with `ζ = ζ_2pq`,
//! `k1 = p²rρ - q²sσ`, `k2 = p²rρ + q²sσ`, so `4Ŝ` has integral entries that
//! are four-term sums of roots of unity. Only `s0² = 8/pq` ever enters an
//! exact identity.

use serde::{Deserialize, Serialize};

use crate::error::{assertion, Error, Result};
use crate::exact::rational::{self, int, rat, Rational};
use crate::exact::{Ball, ComplexBall, CycNumber, IntCyc, IntField, RootSum};
use crate::minimal_model::{KacLabel, MinimalModel, Transversal};
use crate::par;
use crate::report::Check;

/// `4Ŝ` for two arbitrary in-rectangle labels, conductor `2pq`.
pub fn s_hat_roots(model: &MinimalModel, a: KacLabel, b: KacLabel) -> RootSum {
    let (p, q) = (model.p() as i64, model.q() as i64);
    let (r, s, rho, sigma) = (a.r as i64, a.s as i64, b.r as i64, b.s as i64);
    let sign = if (1 + s * rho + r * sigma) % 2 == 0 { 1 } else { -1 };
    let x = p * p * r * rho;
    let y = q * q * s * sigma;
    let (k1, k2) = (x - y, x + y);
    RootSum::from_terms((2 * p * q) as u64, [(k1, sign), (-k1, sign), (k2, -sign), (-k2, -sign)])
}

#[derive(Debug, Clone)]
pub struct SMatrixHat {
    transversal: Transversal,
}

impl SMatrixHat {
    /// Builds Ŝ and asserts that the formula is invariant under folding
    /// either index.
    pub fn build(model: &MinimalModel) -> Result<Self> {
        let t = Transversal::new(model);
        let d = t.len();
        let bad: Vec<String> = par::map_range(d, |i| {
            let li = t.labels[i];
            let pi = model.partner(li);
            for j in i..d {
                let lj = t.labels[j];
                let mut diff = s_hat_roots(model, li, lj);
                diff.add_scaled(&s_hat_roots(model, pi, lj), -1);
                if !diff.is_zero() {
                    return Some(format!("Ŝ not fold-invariant at {li},{lj}"));
                }
            }
            None
        })
        .into_iter()
        .flatten()
        .collect();
        if let Some(msg) = bad.into_iter().next() {
            return assertion(msg);
        }
        Ok(SMatrixHat { transversal: t })
    }

    pub fn model(&self) -> &MinimalModel {
        &self.transversal.model
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn labels(&self) -> &[KacLabel] {
        &self.transversal.labels
    }

    pub fn dim(&self) -> usize {
        self.transversal.len()
    }

    /// `2pq`.
    pub fn conductor(&self) -> u64 {
        2 * self.model().p() as u64 * self.model().q() as u64
    }

    /// `s0² = 8/pq`.
    pub fn scale_squared(&self) -> Rational {
        rat(8, self.model().p() as i64 * self.model().q() as i64)
    }

    /// `4Ŝ_ij` as a sparse root sum.
    pub fn roots(&self, i: usize, j: usize) -> RootSum {
        s_hat_roots(self.model(), self.labels()[i], self.labels()[j])
    }

    /// Exact `Ŝ_ij` in the power basis of `Q(ζ_2pq)`.
    pub fn entry(&self, i: usize, j: usize) -> CycNumber {
        self.roots(i, j).to_cyc().scale(&rat(1, 4))
    }

    /// `4Ŝ_ij` in `field`, whose conductor must be a multiple of `2pq`.
    pub fn int_entry(&self, field: &IntField, i: usize, j: usize) -> IntCyc {
        let step = (field.conductor() / self.conductor()) as i64;
        debug_assert_eq!(field.conductor() % self.conductor(), 0);
        field.from_exponents(self.roots(i, j).terms().iter().map(|&(e, c)| (e as i64 * step, c as i128)))
    }

    /// Dense `4Ŝ` in row-major order.
    pub fn dense_int(&self, field: &IntField) -> Vec<IntCyc> {
        let d = self.dim();
        par::map_range(d * d, |k| self.int_entry(field, k / d, k % d))
    }

    /// Certified enclosure of the (real) entry `Ŝ_ij`.
    pub fn ball(&self, i: usize, j: usize, prec: u32) -> Ball {
        self.roots(i, j).ball(prec).re.div_int(4)
    }

    pub fn float(&self, i: usize, j: usize) -> f64 {
        self.ball(i, j, 64).mid_f64()
    }

    /// Floating S-matrix `s0·Ŝ`, row-major.
    pub fn s_float(&self) -> Vec<f64> {
        let d = self.dim();
        let s0 = rational::to_f64(&self.scale_squared()).sqrt();
        par::map_range(d * d, |k| s0 * self.float(k / d, k % d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TMatrix {
    pub model: MinimalModel,
    /// `T_ii = exp(2πi·k_i / 24pq)`, `k_i = 6(r_i p - s_i q)² - pq`.
    pub exponents: Vec<i64>,
}

impl TMatrix {
    pub fn denominator(&self) -> i64 {
        24 * self.model.p() as i64 * self.model.q() as i64
    }

    /// `k_i / 24pq` as a rational.
    pub fn phase(&self, i: usize) -> Rational {
        rat(self.exponents[i], self.denominator())
    }
}

pub fn build_t(model: &MinimalModel) -> Result<TMatrix> {
    let t = Transversal::new(model);
    let pq = model.p() as i64 * model.q() as i64;
    let c24 = model.central_charge() / int(24);
    let exponents: Vec<i64> = t
        .labels
        .iter()
        .map(|&l| {
            let a = model.kac_offset(l);
            6 * a * a - pq
        })
        .collect();
    let tm = TMatrix { model: model.clone(), exponents };
    for (i, &l) in t.labels.iter().enumerate() {
        let diff = tm.phase(i) - (model.weight_unchecked(l) - &c24);
        if !rational::is_integer(&diff) {
            return assertion(format!("T phase at {l} disagrees with h - c/24"));
        }
    }
    Ok(tm)
}

/// Exact checks of the SL(2,Z) relations.
///
/// * `S_symmetric`: Ŝ = Ŝᵀ.
/// * `S_squared`: Ŝ² = (pq/8)·I, i.e. `(4Ŝ)² = 2pq·I`.
/// * `braiding_squared`: (ŜTŜ)² = (pq/8)·(T⁻¹ŜT⁻¹)². Writing
///   `T = ζ_24^-1 · D` with `D_k = ζ_4pq^(a_k²)`, `a_k = r_k p - s_k q`, this is
///   `(4Ŝ·D·4Ŝ)² = 2pq·i·(D⁻¹·4Ŝ·D⁻¹)²` inside `Q(ζ_4pq)`.
/// * `braiding_sign`: a certified comparison of `s0·(ŜTŜ)_00` with
///   `(T⁻¹ŜT⁻¹)_00` fixing the sign left open by squaring.
pub fn check_modular_relations(model: &MinimalModel, precision: u32) -> Result<Vec<Check>> {
    let s = SMatrixHat::build(model)?;
    let t = build_t(model)?;
    Ok(check_relations_of(&s, &t, precision))
}

pub(crate) fn check_relations_of(s: &SMatrixHat, t: &TMatrix, precision: u32) -> Vec<Check> {
    let d = s.dim();
    let pq = s.model().p() as i64 * s.model().q() as i64;
    let mut checks = Vec::new();

    let asym = par::map_range(d, |i| {
        (i + 1..d).find_map(|j| {
            let mut diff = s.roots(i, j);
            diff.add_scaled(&s.roots(j, i), -1);
            (!diff.is_zero()).then(|| format!("({},{})", s.labels()[i], s.labels()[j]))
        })
    })
    .into_iter()
    .flatten()
    .next();
    checks.push(Check::new("S_symmetric", asym.is_none(), asym.map_or("Ŝ = Ŝᵀ exactly".into(), |e| format!("asymmetric at {e}"))));

    let small = IntField::new(2 * pq as u64);
    let a = s.dense_int(&small);
    let sq = mat_mul(&small, &a, &a, d);
    let target = small.constant(2 * pq as i128);
    let bad = first_mismatch(d, |i, j| if i == j { sq[i * d + j] == target } else { sq[i * d + j].is_zero() });
    checks.push(Check::new(
        "S_squared",
        bad.is_none(),
        bad.map_or(format!("Ŝ² = ({pq}/8)·I exactly"), |(i, j)| format!("Ŝ² wrong at ({},{})", s.labels()[i], s.labels()[j])),
    ));

    checks.push(braiding_squared(s, t, pq));
    checks.push(braiding_sign(s, t, precision));
    checks
}

fn first_mismatch(d: usize, ok: impl Fn(usize, usize) -> bool + Sync + Send) -> Option<(usize, usize)> {
    par::map_range(d, |i| (0..d).find(|&j| !ok(i, j)).map(|j| (i, j))).into_iter().flatten().next()
}

/// Dense product of `d×d` matrices over `field`, rows in parallel.
pub(crate) fn mat_mul(field: &IntField, a: &[IntCyc], b: &[IntCyc], d: usize) -> Vec<IntCyc> {
    par::map_range(d, |i| {
        (0..d)
            .map(|j| {
                let mut acc = field.acc_buffer();
                for k in 0..d {
                    field.mul_acc(&mut acc, &a[i * d + k], &b[k * d + j]);
                }
                field.reduce_acc(acc)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

fn braiding_squared(s: &SMatrixHat, t: &TMatrix, pq: i64) -> Check {
    let d = s.dim();
    let big = IntField::new(4 * pq as u64);
    // D exponents: (k + pq) / 6 = a².
    let dexp: Vec<i64> = t.exponents.iter().map(|k| (k + pq) / 6).collect();
    if t.exponents.iter().any(|k| (k + pq) % 6 != 0) {
        return Check::new("braiding_squared", false, "T exponents not of the form 6a² - pq");
    }
    let a = s.dense_int(&big);
    let ad: Vec<IntCyc> = par::map_range(d * d, |k| big.mul(&a[k], &big.root(dexp[k % d])));
    let lhs1 = mat_mul(&big, &ad, &a, d);
    let rhs1: Vec<IntCyc> = par::map_range(d * d, |k| big.mul(&a[k], &big.root(-dexp[k / d] - dexp[k % d])));
    let lhs = mat_mul(&big, &lhs1, &lhs1, d);
    let rhs2 = mat_mul(&big, &rhs1, &rhs1, d);
    let factor = big.scale(&big.root(pq), 2 * pq as i128);
    let bad = first_mismatch(d, |i, j| lhs[i * d + j] == big.mul(&factor, &rhs2[i * d + j]));
    Check::new(
        "braiding_squared",
        bad.is_none(),
        bad.map_or("(ŜTŜ)² = (pq/8)(T⁻¹ŜT⁻¹)² exactly".into(), |(i, j)| {
            format!("squared braiding relation fails at ({},{})", s.labels()[i], s.labels()[j])
        }),
    )
}

fn braiding_sign(s: &SMatrixHat, t: &TMatrix, prec: u32) -> Check {
    let d = s.dim();
    let den = t.denominator() as u64;
    let s0 = Ball::sqrt_rational(&s.scale_squared(), prec);
    let mut sts = ComplexBall::zero(prec);
    for k in 0..d {
        let sk = s.ball(0, k, prec);
        let tk = ComplexBall::root_of_unity(t.exponents[k], den, prec);
        sts = sts + tk.scale(&(sk.clone() * sk));
    }
    let lhs = sts.scale(&s0);
    let rhs = ComplexBall::root_of_unity(-2 * t.exponents[0], den, prec).scale(&s.ball(0, 0, prec));
    let minus = (lhs.clone() - rhs.clone()).abs_upper_f64();
    let plus = (lhs + rhs).abs_lower_f64();
    let pass = minus < plus && minus < 1e-10;
    Check::new("braiding_sign", pass, format!("|s0(ŜTŜ)₀₀ - (T⁻¹ŜT⁻¹)₀₀| <= {minus:.3e}, |sum| >= {plus:.3e}"))
}

/// Index of the minimal-weight primary, after certifying that its Ŝ-row is
/// strictly positive.
pub fn effective_vacuum(model: &MinimalModel, precision: u32) -> Result<usize> {
    let s = SMatrixHat::build(model)?;
    effective_vacuum_of(&s, precision)
}

pub(crate) fn effective_vacuum_of(s: &SMatrixHat, precision: u32) -> Result<usize> {
    let model = s.model();
    let o = s.labels().iter().position(|&l| l == model.min_weight_label()).expect("label in transversal");
    for j in 0..s.dim() {
        if !s.ball(o, j, precision).is_positive() {
            return Err(Error::Assertion(format!("Ŝ row of {} not positive at {}", s.labels()[o], s.labels()[j])));
        }
    }
    Ok(o)
}
