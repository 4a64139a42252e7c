//! The (M1)-(M3) checks.

use serde::{Deserialize, Serialize};

use super::InvariantMatrix;
use crate::error::Result;
use crate::exact::rational;
use crate::exact::RootBasis;
use crate::modular_data::{s_hat_roots, SMatrixHat};
use crate::par;
use crate::report::{all_pass, Check};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub checks: Vec<Check>,
}

impl InvariantReport {
    pub fn pass(&self) -> bool {
        all_pass(&self.checks)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn verify_invariant(inv: &InvariantMatrix) -> Result<InvariantReport> {
    let s = SMatrixHat::build(inv.model())?;
    Ok(verify_with(&s, inv))
}

/// Same as [`verify_invariant`] with a prebuilt Ŝ for the same model.
pub fn verify_with(s: &SMatrixHat, inv: &InvariantMatrix) -> InvariantReport {
    let model = inv.model();
    let labels = inv.labels();
    let nz = inv.nonzero();

    let neg: Vec<_> = nz.iter().filter(|t| t.2 < 0).collect();
    let m1 = Check::new(
        "M1",
        neg.is_empty(),
        match neg.first() {
            None => "entries are nonnegative integers".to_string(),
            Some(&&(i, j, v)) => format!("entry {v} at ({},{})", labels[i], labels[j]),
        },
    );
    let m2 = Check::new("M2", inv.get(0, 0) == 1, format!("X_vac,vac = {}", inv.get(0, 0)));

    let weights: Vec<_> = labels.iter().map(|&l| model.conformal_weight(l).expect("transversal label")).collect();
    let bad_t = nz.iter().find(|&&(i, j, _)| !rational::is_integer(&(&weights[i] - &weights[j])));
    let m3t = Check::new(
        "M3_T",
        bad_t.is_none(),
        match bad_t {
            None => "X_ij != 0 only where h_i - h_j is an integer".to_string(),
            Some(&(i, j, _)) => format!(
                "X at ({},{}) nonzero but h difference {} is not an integer",
                labels[i],
                labels[j],
                &weights[i] - &weights[j]
            ),
        },
    );

    let bad_s = m3_s_failure(s, inv);
    let m3s = Check::new(
        "M3_S",
        bad_s.is_none(),
        match bad_s {
            None => "XŜ = ŜX exactly".to_string(),
            Some((i, j)) => format!("(XŜ - ŜX) nonzero at ({},{})", labels[i], labels[j]),
        },
    );
    InvariantReport { checks: vec![m1, m2, m3t, m3s] }
}

pub fn m3_s_holds(s: &SMatrixHat, inv: &InvariantMatrix) -> bool {
    m3_s_failure(s, inv).is_none()
}

/// First entry of the commutator that is not exactly zero. Works from the
/// sparse rows and columns of X; each entry is a short sum of roots of unity
/// whose vanishing is decided in canonical form.
fn m3_s_failure(s: &SMatrixHat, inv: &InvariantMatrix) -> Option<(usize, usize)> {
    let d = inv.dim();
    let model = s.model();
    let labels = s.labels();
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); d];
    let mut cols: Vec<Vec<(usize, i64)>> = vec![Vec::new(); d];
    for (i, j, v) in inv.nonzero() {
        rows[i].push((j, v));
        cols[j].push((i, v));
    }
    // For symmetric X the commutator is antisymmetric with zero diagonal.
    let sym = inv.is_symmetric();
    let basis = RootBasis::get(s.conductor());
    par::map_range(d, |i| {
        let mut terms = Vec::new();
        let start = if sym { i + 1 } else { 0 };
        (start..d).find(|&j| {
            terms.clear();
            for &(k, v) in &rows[i] {
                let r = s_hat_roots(model, labels[k], labels[j]);
                terms.extend(r.terms().iter().map(|&(e, c)| (e, c * v)));
            }
            for &(k, v) in &cols[j] {
                let r = s_hat_roots(model, labels[i], labels[k]);
                terms.extend(r.terms().iter().map(|&(e, c)| (e, -c * v)));
            }
            !basis.is_zero(&terms)
        })
        .map(|j| (i, j))
    })
    .into_iter()
    .flatten()
    .next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{build_catalog, CatalogRow};
    use crate::minimal_model::MinimalModel;

    fn m(p: u32, q: u32) -> MinimalModel {
        MinimalModel::new(p, q).unwrap()
    }

    #[test]
    fn identity_passes() {
        for (p, q) in [(4, 3), (5, 2), (7, 4)] {
            let r = verify_invariant(&InvariantMatrix::identity(&m(p, q))).unwrap();
            assert!(r.pass(), "{r:?}");
        }
    }

    #[test]
    fn ising_perturbation_fails_t() {
        let model = m(4, 3);
        let mut x = InvariantMatrix::identity(&model);
        x.set(0, 1, 1);
        let r = verify_invariant(&x).unwrap();
        assert!(!r.get("M3_T").unwrap().pass);
        assert!(!r.get("M3_S").unwrap().pass);
        assert!(r.get("M1").unwrap().pass);
    }

    #[test]
    fn e6_at_12_11_passes() {
        let model = m(12, 11);
        let x = build_catalog(&model, CatalogRow::E6Q12).unwrap();
        let r = verify_invariant(&x).unwrap();
        assert!(r.pass(), "{r:?}");
        let d = build_catalog(&model, CatalogRow::DPEven).unwrap();
        assert!(verify_invariant(&d).unwrap().pass());
        assert_ne!(x, d);
        assert_ne!(x, InvariantMatrix::identity(&model));
    }

    #[test]
    fn small_d_rows_pass() {
        for (p, q, row) in [
            (5, 6, CatalogRow::DQOdd),
            (5, 8, CatalogRow::DQEven),
            (6, 5, CatalogRow::DPOdd),
            (8, 5, CatalogRow::DPEven),
        ] {
            let x = build_catalog(&m(p, q), row).unwrap();
            let r = verify_invariant(&x).unwrap();
            assert!(r.pass(), "({p},{q}) {row}: {r:?}");
        }
    }

    #[test]
    fn wrong_vacuum_fails_m2() {
        let model = m(5, 2);
        let mut x = InvariantMatrix::identity(&model);
        x.set(0, 0, 2);
        let r = verify_invariant(&x).unwrap();
        assert!(!r.get("M2").unwrap().pass);
    }
}
