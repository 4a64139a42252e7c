//! The branching identity for `𝒰 ⊗ L(c_{p',p}, h_{m,m'})` over
//! `L(c_{p+p',p}) ⊗ L(c_{p',p+p'})`, checked as q-series identities.
//!
//! With `F_{m,m'} = Σ_n χ^{p+p',p}_{m,n} · χ^{p',p+p'}_{n,m'}` the
//! decomposition says `F_{m,m'} = χ_𝒰 · χ^{p',p}_{m,m'}`. The unknown `χ_𝒰`
//! is eliminated by comparing two labels, then recovered by division.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::characters::{character, PuiseuxSeries};
use crate::error::{Error, Result};
use crate::exact::rational::{self, int, rat, Rational};
use crate::minimal_model::{KacLabel, MinimalModel};
use crate::par;
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingInstance {
    pub p: u32,
    pub pprime: u32,
    /// `(p+p', p)`
    pub big: MinimalModel,
    /// `(p', p+p')`
    pub dual: MinimalModel,
    /// `(p', p)`
    pub small: MinimalModel,
}

impl BranchingInstance {
    pub fn new(p: u32, pprime: u32) -> Result<Self> {
        let s = p + pprime;
        Ok(BranchingInstance {
            p,
            pprime,
            big: MinimalModel::new(s, p)?,
            dual: MinimalModel::new(pprime, s)?,
            small: MinimalModel::new(pprime, p)?,
        })
    }

    /// All rectangle labels `(m, m')` of `(p', p)`: `m <= p-1`, `m' <= p'-1`.
    pub fn small_labels(&self) -> Vec<KacLabel> {
        (1..self.p).flat_map(|m| (1..self.pprime).map(move |mp| KacLabel::new(m, mp))).collect()
    }

    /// `c_{p+p',p} + c_{p',p+p'} - c_{p',p}`; the theorem needs `-5`.
    pub fn central_charge_defect(&self) -> Rational {
        self.big.central_charge() + self.dual.central_charge() - self.small.central_charge()
    }
}

/// One summand `(m,n)` of `(p+p',p)` times `(n,m')` of `(p',p+p')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingTerm {
    pub n: u32,
    pub left: KacLabel,
    pub right: KacLabel,
}

/// Summands for `(m, m')`: `0 < n < p+p'`, `n ≡ m+m'-1 (mod 2)`, folded.
pub fn decomposition_list(p: u32, pprime: u32, m: u32, mprime: u32) -> Result<Vec<BranchingTerm>> {
    let inst = BranchingInstance::new(p, pprime)?;
    if !inst.small.in_bounds(m, mprime) {
        return Err(Error::Domain(format!("({m},{mprime}) is not a label of ({pprime},{p})")));
    }
    decomposition_of(&inst, m, mprime)
}

fn decomposition_of(inst: &BranchingInstance, m: u32, mprime: u32) -> Result<Vec<BranchingTerm>> {
    let parity = (m + mprime - 1) % 2;
    (1..inst.p + inst.pprime)
        .filter(|n| n % 2 == parity)
        .map(|n| Ok(BranchingTerm { n, left: inst.big.fold(m, n)?, right: inst.dual.fold(n, mprime)? }))
        .collect()
}

/// `F_{m,m'}` to `order`.
pub fn branching_series(inst: &BranchingInstance, m: u32, mprime: u32, order: usize) -> Result<PuiseuxSeries> {
    let terms = decomposition_of(inst, m, mprime)?;
    let mut acc: Option<PuiseuxSeries> = None;
    for t in terms {
        let prod = character(&inst.big, t.left, order)?.mul(&character(&inst.dual, t.right, order)?);
        acc = Some(match acc {
            None => prod,
            Some(a) => a.add(&prod)?,
        });
    }
    acc.ok_or_else(|| Error::Domain("empty decomposition".into()))
}

/// Cross-ratio identity `F_a · χ_b = F_b · χ_a` for two labels of `(p', p)`.
pub fn branching_identity_check(
    p: u32,
    pprime: u32,
    pair1: (u32, u32),
    pair2: (u32, u32),
    order: usize,
) -> Result<Check> {
    let inst = BranchingInstance::new(p, pprime)?;
    for (m, mp) in [pair1, pair2] {
        if !inst.small.in_bounds(m, mp) {
            return Err(Error::Domain(format!("({m},{mp}) is not a label of ({pprime},{p})")));
        }
    }
    identity_of(&inst, pair1, pair2, order)
}

fn identity_of(inst: &BranchingInstance, a: (u32, u32), b: (u32, u32), order: usize) -> Result<Check> {
    let fa = branching_series(inst, a.0, a.1, order)?;
    let fb = branching_series(inst, b.0, b.1, order)?;
    let ca = character(&inst.small, KacLabel::new(a.0, a.1), order)?;
    let cb = character(&inst.small, KacLabel::new(b.0, b.1), order)?;
    let lhs = fa.mul(&cb);
    let rhs = fb.mul(&ca);
    let diff = lhs.sub(&rhs)?;
    let pass = lhs.offset == rhs.offset && diff.is_zero();
    let detail = if pass {
        format!("F({},{})·χ({},{}) = F({},{})·χ({},{}) to order {}", a.0, a.1, b.0, b.1, b.0, b.1, a.0, a.1, diff.order)
    } else {
        let n = diff.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        format!("series differ at exponent {}", &diff.offset + int(n as i64))
    };
    Ok(Check::new(format!("branching[{},{}|{},{}]", a.0, a.1, b.0, b.1), pass, detail))
}

/// Every pair of rectangle labels of `(p', p)`, plus the summand-offset and
/// central-charge bookkeeping.
pub fn verify_branching(p: u32, pprime: u32, order: usize) -> Result<Vec<Check>> {
    let inst = BranchingInstance::new(p, pprime)?;
    let labels = inst.small_labels();
    let mut checks = vec![c_bookkeeping(&inst)];
    checks.push(weight_offsets(&inst)?);
    let pairs: Vec<(usize, usize)> =
        (0..labels.len()).flat_map(|i| (i + 1..labels.len()).map(move |j| (i, j))).collect();
    let results = par::map_slice(&pairs, |&(i, j)| {
        identity_of(&inst, (labels[i].r, labels[i].s), (labels[j].r, labels[j].s), order)
    });
    for r in results {
        checks.push(r?);
    }
    Ok(checks)
}

fn c_bookkeeping(inst: &BranchingInstance) -> Check {
    let defect = inst.central_charge_defect();
    Check::new(
        "central_charge_sum",
        defect == int(-5),
        format!(
            "{} + {} - {} = {}",
            inst.big.central_charge(),
            inst.dual.central_charge(),
            inst.small.central_charge(),
            defect
        ),
    )
}

/// For each `(m,m')` the summand weights `h_{m,n} + h_{n,m'}` agree mod 1.
fn weight_offsets(inst: &BranchingInstance) -> Result<Check> {
    for l in inst.small_labels() {
        let terms = decomposition_of(inst, l.r, l.s)?;
        let w: Vec<Rational> = terms
            .iter()
            .map(|t| Ok(inst.big.conformal_weight(t.left)? + inst.dual.conformal_weight(t.right)?))
            .collect::<Result<_>>()?;
        if let Some(bad) = w.iter().find(|x| !rational::is_integer(&(*x - &w[0]))) {
            return Ok(Check::new(
                "summand_weights_congruent",
                false,
                format!("label ({},{}): weights {} and {} differ by a non-integer", l.r, l.s, w[0], bad),
            ));
        }
    }
    Ok(Check::new("summand_weights_congruent", true, "summand weights agree mod 1 for every label"))
}

/// `χ_𝒰 = F_{1,1} / χ^{p',p}_{1,1}`, with its shape asserted: leading
/// exponent `5/24`, nonnegative integer coefficients.
pub fn extract_chi_u(p: u32, pprime: u32, order: usize) -> Result<PuiseuxSeries> {
    let inst = BranchingInstance::new(p, pprime)?;
    if inst.central_charge_defect() != int(-5) {
        return Err(Error::Assertion(format!("central charges do not sum to -5 for ({p},{pprime})")));
    }
    let f = branching_series(&inst, 1, 1, order)?;
    let chi = f.div(&character(&inst.small, KacLabel::VACUUM, order)?)?;
    if chi.offset != rat(5, 24) {
        return Err(Error::Assertion(format!("χ_U starts at q^{} instead of q^(5/24)", chi.offset)));
    }
    if !chi.is_nonneg_integral() {
        return Err(Error::Assertion("χ_U has a coefficient outside Z≥0".into()));
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        let l = decomposition_list(3, 2, 1, 1).unwrap();
        assert_eq!(l.iter().map(|t| t.n).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!((l[0].left, l[0].right), (KacLabel::new(1, 1), KacLabel::new(1, 1)));
        assert_eq!((l[1].left, l[1].right), (KacLabel::new(1, 3), KacLabel::new(3, 1)));
        let even = decomposition_list(3, 2, 2, 1).unwrap();
        assert!(even.iter().all(|t| t.n % 2 == 0));
        let l = decomposition_list(4, 3, 1, 1).unwrap();
        assert_eq!(l.iter().map(|t| t.n).collect::<Vec<_>>(), vec![1, 3, 5]);
        assert!(decomposition_list(3, 2, 3, 1).is_err());
    }

    #[test]
    fn central_charges() {
        let a = BranchingInstance::new(3, 2).unwrap();
        assert_eq!(a.big.central_charge(), &rat(-3, 5));
        assert_eq!(a.central_charge_defect(), int(-5));
        let b = BranchingInstance::new(4, 3).unwrap();
        assert_eq!(b.big.central_charge(), &rat(-13, 14));
        assert_eq!(b.dual.central_charge(), &rat(-25, 7));
    }

    #[test]
    fn identity_holds_for_small_instances() {
        for (p, pp) in [(3, 2), (4, 3)] {
            for c in verify_branching(p, pp, 12).unwrap() {
                assert!(c.pass, "({p},{pp}) {}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn chi_u_agrees() {
        let a = extract_chi_u(3, 2, 10).unwrap();
        let b = extract_chi_u(4, 3, 10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn same_pair_is_trivial() {
        assert!(branching_identity_check(5, 2, (2, 1), (2, 1), 8).unwrap().pass);
    }
}
