//! Fusion coefficients by the truncated window rule and by the Verlinde
//! formula, with a table that cross-checks the two.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::rat;
use crate::exact::{IntCyc, IntField};
use crate::minimal_model::{KacLabel, MinimalModel};
use crate::modular_data::SMatrixHat;
use crate::par;
use crate::report::Check;

/// `su(2)`-type window: is `c` in `|a-b|+1 ..= min(a+b-1, 2k-1-a-b)` step 2.
fn window(a: u32, b: u32, c: u32, k: u32) -> bool {
    let lo = a.abs_diff(b) + 1;
    let hi = (a + b - 1).min((2 * k - 1).saturating_sub(a + b));
    lo <= c && c <= hi && (a + b + c) % 2 == 1
}

/// Window-rule fusion coefficient. The rectangle rule is applied to both
/// members of the target's fold orbit and the two terms are summed.
pub fn fusion_coeff(model: &MinimalModel, a: KacLabel, b: KacLabel, c: KacLabel) -> u32 {
    let (p, q) = (model.p(), model.q());
    let term = |c: KacLabel| (window(a.r, b.r, c.r, q) && window(a.s, b.s, c.s, p)) as u32;
    let cp = model.partner(c);
    if cp == c {
        term(c)
    } else {
        term(c) + term(cp)
    }
}

/// Nonzero fusion targets of `a × b`, in transversal order.
pub fn fusion_targets(model: &MinimalModel, a: KacLabel, b: KacLabel) -> Vec<KacLabel> {
    model.kac_transversal().into_iter().filter(|&c| fusion_coeff(model, a, b, c) > 0).collect()
}

/// Precomputed exact data for Verlinde sums over `Z[ζ_2pq]`.
pub struct Verlinde {
    field: IntField,
    d: usize,
    /// `4Ŝ`, row-major.
    a: Vec<IntCyc>,
    /// `R_am = Ŝ_am / Ŝ_0m`, asserted integral.
    ratio: Vec<IntCyc>,
    labels: Vec<KacLabel>,
    model: MinimalModel,
}

impl Verlinde {
    pub fn new(model: &MinimalModel) -> Result<Self> {
        let s = SMatrixHat::build(model)?;
        let d = s.dim();
        let field = IntField::new(s.conductor());
        let a = s.dense_int(&field);
        let inv0: Vec<_> = (0..d).map(|m| s.entry(0, m).inv()).collect::<Result<_>>()?;
        let ratio = par::map_range(d * d, |k| -> Result<IntCyc> {
            let (am, m) = (k / d, k % d);
            let r = s.entry(am, m).mul(&inv0[m])?;
            field.from_cyc(&r).map_err(|_| Error::Assertion(format!("S ratio at ({am},{m}) is not integral")))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        Ok(Verlinde { field, d, a, ratio, labels: s.labels().to_vec(), model: model.clone() })
    }

    /// `N_ab^c` by indices; `N = (1/2pq)·Σ_m R_am·A_bm·conj(A_cm)`.
    pub fn coeff_idx(&self, a: usize, b: usize, c: usize) -> Result<u32> {
        let f = &self.field;
        let d = self.d;
        let mut acc = f.acc_buffer();
        for m in 0..d {
            let ra = f.mul(&self.ratio[a * d + m], &self.a[b * d + m]);
            f.mul_acc(&mut acc, &ra, &f.conj(&self.a[c * d + m]));
        }
        self.finish(f.reduce_acc(acc), a, b, c)
    }

    fn finish(&self, sum: IntCyc, a: usize, b: usize, c: usize) -> Result<u32> {
        let den = 2 * self.model.p() as i128 * self.model.q() as i128;
        let name = || format!("N_{{{},{}}}^{{{}}}", self.labels[a], self.labels[b], self.labels[c]);
        let v = self
            .field
            .as_integer(&sum)
            .ok_or_else(|| Error::Assertion(format!("{} is not rational", name())))?;
        if v % den != 0 || v < 0 {
            return Err(Error::Assertion(format!("{} = {} is not a nonnegative integer", name(), rat(v as i64, den as i64))));
        }
        Ok((v / den) as u32)
    }

    /// Full tensor `N[a][b][c]`, flattened.
    pub fn table(&self) -> Result<Vec<u32>> {
        let d = self.d;
        let f = &self.field;
        let conj: Vec<IntCyc> = self.a.iter().map(|x| f.conj(x)).collect();
        par::map_range(d * d, |ab| -> Result<Vec<u32>> {
            let (a, b) = (ab / d, ab % d);
            let ra: Vec<IntCyc> = (0..d).map(|m| f.mul(&self.ratio[a * d + m], &self.a[b * d + m])).collect();
            (0..d)
                .map(|c| {
                    let mut acc = f.acc_buffer();
                    for m in 0..d {
                        f.mul_acc(&mut acc, &ra[m], &conj[c * d + m]);
                    }
                    self.finish(f.reduce_acc(acc), a, b, c)
                })
                .collect()
        })
        .into_iter()
        .collect::<Result<Vec<Vec<u32>>>>()
        .map(|v| v.concat())
    }
}

pub fn verlinde_coeff(model: &MinimalModel, a: KacLabel, b: KacLabel, c: KacLabel) -> Result<u32> {
    let v = Verlinde::new(model)?;
    let idx = |l: KacLabel| v.labels.iter().position(|&x| x == model.fold_label(l)).expect("transversal label");
    v.coeff_idx(idx(a), idx(b), idx(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTable {
    pub model: MinimalModel,
    pub labels: Vec<KacLabel>,
    /// `n[(a*d + b)*d + c]`.
    pub n: Vec<u32>,
}

impl FusionTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        let d = self.dim();
        self.n[(a * d + b) * d + c]
    }

    pub fn nonzero(&self) -> usize {
        self.n.iter().filter(|&&x| x > 0).count()
    }
}

/// Window-rule table, compared entrywise against Verlinde. Mismatches come
/// back as failing checks naming the triple.
pub fn fusion_table(model: &MinimalModel) -> Result<(FusionTable, Vec<Check>)> {
    let labels = model.kac_transversal();
    let d = labels.len();
    let n: Vec<u32> = par::map_range(d * d * d, |k| {
        fusion_coeff(model, labels[k / (d * d)], labels[(k / d) % d], labels[k % d])
    });
    let table = FusionTable { model: model.clone(), labels: labels.clone(), n };
    let verlinde = Verlinde::new(model)?.table()?;
    let mismatches: Vec<String> = (0..d * d * d)
        .filter(|&k| table.n[k] != verlinde[k])
        .map(|k| {
            format!(
                "N_{{{},{}}}^{{{}}}: window {} vs Verlinde {}",
                labels[k / (d * d)],
                labels[(k / d) % d],
                labels[k % d],
                table.n[k],
                verlinde[k]
            )
        })
        .collect();
    let mut checks = vec![Check::new(
        "window_equals_verlinde",
        mismatches.is_empty(),
        if mismatches.is_empty() { format!("{} triples agree", d * d * d) } else { mismatches.join("; ") },
    )];
    checks.extend(ring_axioms(&table));
    Ok((table, checks))
}

/// Multiplicity bound, unit, commutativity and associativity.
pub fn ring_axioms(t: &FusionTable) -> Vec<Check> {
    let d = t.dim();
    let bound = t.n.iter().all(|&x| x <= 1);
    let unit = (0..d).all(|a| (0..d).all(|c| t.get(0, a, c) == (a == c) as u32));
    let comm = (0..d).all(|a| (0..d).all(|b| (0..d).all(|c| t.get(a, b, c) == t.get(b, a, c))));
    let assoc_fail = par::map_range(d * d, |ab| {
        let (a, b) = (ab / d, ab % d);
        (0..d).any(|c| {
            (0..d).any(|x| {
                let l: u32 = (0..d).map(|e| t.get(a, b, e) * t.get(e, c, x)).sum();
                let r: u32 = (0..d).map(|e| t.get(b, c, e) * t.get(a, e, x)).sum();
                l != r
            })
        })
    })
    .into_iter()
    .any(|x| x);
    vec![
        Check::new("multiplicity_at_most_one", bound, format!("max coefficient {}", t.n.iter().max().copied().unwrap_or(0))),
        Check::new("unit", unit, "N_{0a}^c = δ_ac"),
        Check::new("commutative", comm, "N_ab^c = N_ba^c"),
        Check::new("associative", !assoc_fail, "Σ_e N_ab^e N_ec^x = Σ_e N_bc^e N_ae^x"),
    ]
}
