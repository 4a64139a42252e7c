//! The four exceptional extension families and their checks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::characters::{character, PuiseuxSeries};
use crate::error::{Error, Result};
use crate::exact::rational::{self, int, Rational};
use crate::invariants::{build_catalog, verify_with, CatalogRow, InvariantMatrix, InvariantReport};
use crate::minimal_model::{KacLabel, MinimalModel};
use crate::modular_data::SMatrixHat;
use crate::report::Check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `p = 12`, `q ≡ 11 (mod 12)`, summand `(1,7)`.
    E6q,
    /// `q = 12`, `p ≡ 1 (mod 12)`, summand `(7,1)`.
    E6r,
    /// `p = 30`, `q ≡ 29 (mod 30)`, summands `(1,11), (1,19), (1,29)`.
    E8q,
    /// `q = 30`, `p ≡ 1 (mod 30)`, summands `(11,1), (19,1), (29,1)`.
    E8r,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::E6q, Family::E6r, Family::E8q, Family::E8r];

    pub fn name(self) -> &'static str {
        match self {
            Family::E6q => "e6q",
            Family::E6r => "e6r",
            Family::E8q => "e8q",
            Family::E8r => "e8r",
        }
    }

    fn fixed(self) -> u32 {
        match self {
            Family::E6q | Family::E6r => 12,
            Family::E8q | Family::E8r => 30,
        }
    }

    /// Exceptional exponents sit in the s-slot for the q-families.
    pub fn slot_s(self) -> bool {
        matches!(self, Family::E6q | Family::E8q)
    }

    pub fn exponents(self) -> &'static [u32] {
        match self {
            Family::E6q | Family::E6r => &[1, 7],
            Family::E8q | Family::E8r => &[1, 11, 19, 29],
        }
    }

    pub fn is_e8(self) -> bool {
        matches!(self, Family::E8q | Family::E8r)
    }

    pub fn catalog_row(self) -> CatalogRow {
        match self {
            Family::E6q => CatalogRow::E6Q12,
            Family::E6r => CatalogRow::E6P12,
            Family::E8q => CatalogRow::E8Q30,
            Family::E8r => CatalogRow::E8P30,
        }
    }

    /// `(p, q)` for the parameter value, or a domain error.
    pub fn model(self, param: u32) -> Result<MinimalModel> {
        let f = self.fixed();
        let want = if self.slot_s() { f - 1 } else { 1 };
        if param < 2 || param % f != want % f {
            return Err(Error::Domain(format!("{}: parameter {param} is not ≡ {want} mod {f}", self.name())));
        }
        if self.slot_s() {
            MinimalModel::new(f, param)
        } else {
            MinimalModel::new(param, f)
        }
    }

    /// The `k`-th admissible parameter, `k >= 1`.
    pub fn nth_parameter(self, k: u32) -> u32 {
        let f = self.fixed();
        if self.slot_s() {
            f * k - 1
        } else {
            f * k + 1
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Domain(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub family: Family,
    pub parameter: u32,
    pub model: MinimalModel,
    /// Folded summand labels, vacuum first.
    pub summands: Vec<KacLabel>,
    #[serde(with = "rational::vec_as_string")]
    pub weights: Vec<Rational>,
}

pub fn family_descriptor(family: Family, parameter: u32) -> Result<ExtensionDescriptor> {
    let model = family.model(parameter)?;
    let summands: Vec<KacLabel> = family
        .exponents()
        .iter()
        .map(|&e| if family.slot_s() { model.fold(1, e) } else { model.fold(e, 1) })
        .collect::<Result<_>>()?;
    if summands[0] != KacLabel::VACUUM || summands[1..].contains(&KacLabel::VACUUM) {
        return Err(Error::Assertion("vacuum must appear exactly once".into()));
    }
    for (i, a) in summands.iter().enumerate() {
        if summands[i + 1..].contains(a) {
            return Err(Error::Assertion(format!("summand {a} repeated after folding")));
        }
    }
    let weights = summands.iter().map(|&l| model.conformal_weight(l)).collect::<Result<_>>()?;
    Ok(ExtensionDescriptor { family, parameter, model, summands, weights })
}

/// Every non-vacuum weight must be a positive integer.
pub fn check_integrality(desc: &ExtensionDescriptor) -> Check {
    let bad: Vec<String> = desc
        .summands
        .iter()
        .zip(&desc.weights)
        .skip(1)
        .filter(|(_, h)| !(rational::is_integer(h) && **h > int(0)))
        .map(|(l, h)| format!("h{l} = {h}"))
        .collect();
    let list: Vec<String> = desc.weights.iter().skip(1).map(|h| h.to_string()).collect();
    Check::new(
        "weights_integral",
        bad.is_empty(),
        if bad.is_empty() { format!("weights {}", list.join(", ")) } else { bad.join("; ") },
    )
}

/// Sum of summand characters; starts at `-c/24` with nonnegative integer
/// coefficients.
pub fn extension_character(desc: &ExtensionDescriptor, order: usize) -> Result<PuiseuxSeries> {
    let mut acc = character(&desc.model, desc.summands[0], order)?;
    for &l in &desc.summands[1..] {
        acc = acc.add(&character(&desc.model, l, order)?)?;
    }
    let expect = -desc.model.central_charge() / int(24);
    if acc.offset != expect {
        return Err(Error::Assertion(format!("extension character starts at {} not {}", acc.offset, expect)));
    }
    if !acc.is_nonneg_integral() {
        return Err(Error::Assertion("extension character has a coefficient outside Z≥0".into()));
    }
    Ok(acc)
}

/// The catalog row for the family, after asserting that it passes (M1)-(M3)
/// and that its vacuum row is the indicator of the summand set.
pub fn invariant_of_family(desc: &ExtensionDescriptor) -> Result<(InvariantMatrix, InvariantReport)> {
    let s = SMatrixHat::build(&desc.model)?;
    invariant_of_family_with(&s, desc)
}

pub fn invariant_of_family_with(s: &SMatrixHat, desc: &ExtensionDescriptor) -> Result<(InvariantMatrix, InvariantReport)> {
    let row = desc.family.catalog_row();
    let x = build_catalog(&desc.model, row)?;
    let report = verify_with(s, &x);
    if !report.pass() {
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        return Err(Error::Assertion(format!("{row} at {} fails {}", desc.model, failed.join(", "))));
    }
    for (j, &l) in x.labels().iter().enumerate() {
        let want = desc.summands.contains(&l) as i64;
        if x.get(0, j) != want {
            return Err(Error::Assertion(format!("{row}: X_vac,{l} = {} but expected {want}", x.get(0, j))));
        }
    }
    Ok((x, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn weights_of_first_members() {
        let d = family_descriptor(Family::E6q, 11).unwrap();
        assert_eq!(d.weights, vec![int(0), int(8)]);
        let d = family_descriptor(Family::E6r, 13).unwrap();
        assert_eq!(d.weights, vec![int(0), int(10)]);
        let d = family_descriptor(Family::E8q, 29).unwrap();
        assert_eq!(d.weights, vec![int(0), int(24), int(78), int(189)]);
        assert!(check_integrality(&d).pass);
    }

    #[test]
    fn congruence_is_enforced() {
        assert!(family_descriptor(Family::E6q, 12).is_err());
        assert!(family_descriptor(Family::E8r, 30).is_err());
        assert!(family_descriptor(Family::E6r, 1).is_err());
        assert_eq!(Family::E8r.nth_parameter(3), 91);
        assert_eq!(Family::E6q.nth_parameter(2), 23);
    }

    #[test]
    fn e6_character_shape() {
        let d = family_descriptor(Family::E6q, 11).unwrap();
        let ch = extension_character(&d, 10).unwrap();
        assert_eq!(ch.offset, rat(-7, 176));
        assert_eq!(ch.coeff_at(&rat(-7, 176)), Some(&int(1)));
        assert_eq!(ch.coeff_at(&(rat(-7, 176) + int(1))), Some(&int(0)));
    }

    #[test]
    fn e6_invariant_matches() {
        let d = family_descriptor(Family::E6q, 11).unwrap();
        let (x, r) = invariant_of_family(&d).unwrap();
        assert!(r.pass());
        assert_eq!(x.vacuum_row_support().len(), 2);
        let d = family_descriptor(Family::E6r, 13).unwrap();
        assert!(invariant_of_family(&d).is_ok());
    }
}
