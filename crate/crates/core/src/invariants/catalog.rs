//! Rows of the ADE classification table, built by literal expansion of the
//! bilinear sums over the full Kac rectangle followed by folding.
//!
//! Tags name the family parameter, as in the extension families: `E6_q12`
//! is the row whose exceptional exponents {1,7 | 4,8 | 5,11} sit in the
//! s-slot, which requires `p = 12` (the `(A_{q-1}, E6)` invariant); `E6_p12`
//! carries them in the r-slot and requires `q = 12`. D tags name the slot
//! whose bound is `2(2m+1)` or `4m`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::InvariantMatrix;
use crate::error::{Error, Result};
use crate::minimal_model::{MinimalModel, Transversal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CatalogRow {
    A,
    DQOdd,
    DQEven,
    DPOdd,
    DPEven,
    E6P12,
    E6Q12,
    E7P18,
    E7Q18,
    E8P30,
    E8Q30,
}

impl CatalogRow {
    pub const ALL: [CatalogRow; 11] = [
        CatalogRow::A,
        CatalogRow::DQOdd,
        CatalogRow::DQEven,
        CatalogRow::DPOdd,
        CatalogRow::DPEven,
        CatalogRow::E6P12,
        CatalogRow::E6Q12,
        CatalogRow::E7P18,
        CatalogRow::E7Q18,
        CatalogRow::E8P30,
        CatalogRow::E8Q30,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CatalogRow::A => "A",
            CatalogRow::DQOdd => "D_q_odd",
            CatalogRow::DQEven => "D_q_even",
            CatalogRow::DPOdd => "D_p_odd",
            CatalogRow::DPEven => "D_p_even",
            CatalogRow::E6P12 => "E6_p12",
            CatalogRow::E6Q12 => "E6_q12",
            CatalogRow::E7P18 => "E7_p18",
            CatalogRow::E7Q18 => "E7_q18",
            CatalogRow::E8P30 => "E8_p30",
            CatalogRow::E8Q30 => "E8_q30",
        }
    }

    /// Dynkin-pair type, first entry for the r-slot.
    pub fn type_name(self) -> &'static str {
        match self {
            CatalogRow::A => "(A_{q-1}, A_{p-1})",
            CatalogRow::DQOdd | CatalogRow::DQEven => "(D_{q/2+1}, A_{p-1})",
            CatalogRow::DPOdd | CatalogRow::DPEven => "(A_{q-1}, D_{p/2+1})",
            CatalogRow::E6P12 => "(E_6, A_{p-1})",
            CatalogRow::E6Q12 => "(A_{q-1}, E_6)",
            CatalogRow::E7P18 => "(E_7, A_{p-1})",
            CatalogRow::E7Q18 => "(A_{q-1}, E_7)",
            CatalogRow::E8P30 => "(E_8, A_{p-1})",
            CatalogRow::E8Q30 => "(A_{q-1}, E_8)",
        }
    }

    pub fn applies(self, p: u32, q: u32) -> bool {
        match self {
            CatalogRow::A => true,
            CatalogRow::DQOdd => q >= 6 && q % 4 == 2,
            CatalogRow::DQEven => q >= 4 && q.is_multiple_of(4),
            CatalogRow::DPOdd => p >= 6 && p % 4 == 2,
            CatalogRow::DPEven => p >= 4 && p.is_multiple_of(4),
            CatalogRow::E6P12 => q == 12,
            CatalogRow::E6Q12 => p == 12,
            CatalogRow::E7P18 => q == 18,
            CatalogRow::E7Q18 => p == 18,
            CatalogRow::E8P30 => q == 30,
            CatalogRow::E8Q30 => p == 30,
        }
    }

    pub fn applicable(model: &MinimalModel) -> Vec<CatalogRow> {
        Self::ALL.into_iter().filter(|r| r.applies(model.p(), model.q())).collect()
    }

    pub fn is_e7(self) -> bool {
        matches!(self, CatalogRow::E7P18 | CatalogRow::E7Q18)
    }
}

impl fmt::Display for CatalogRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CatalogRow {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|r| r.tag().to_ascii_lowercase() == norm)
            .ok_or_else(|| Error::Domain(format!("unknown catalog row {s:?}")))
    }
}

/// Accumulates `2X` so the table's ½ stays exact.
struct Twice<'a> {
    t: &'a Transversal,
    d: usize,
    m: Vec<i64>,
}

impl<'a> Twice<'a> {
    fn new(t: &'a Transversal) -> Self {
        let d = t.len();
        Twice { t, d, m: vec![0; d * d] }
    }

    fn idx(&self, (r, s): (u32, u32)) -> usize {
        self.t.index_of(r, s).expect("label inside the rectangle")
    }

    /// `(Σ_a Z_a) · conj(Σ_b Z_b)` with weight `w` (in units of ½).
    fn outer(&mut self, left: &[(u32, u32)], right: &[(u32, u32)], w: i64) {
        for &a in left {
            for &b in right {
                let (i, j) = (self.idx(a), self.idx(b));
                self.m[i * self.d + j] += w;
            }
        }
    }

    fn halve(self, model: &MinimalModel, row: &str) -> Result<InvariantMatrix> {
        let mut out = Vec::with_capacity(self.m.len());
        for (k, v) in self.m.into_iter().enumerate() {
            if v % 2 != 0 {
                let (i, j) = (k / self.d, k % self.d);
                return Err(Error::Assertion(format!(
                    "{row}: entry ({},{}) is not integral after folding",
                    self.t.labels[i], self.t.labels[j]
                )));
            }
            out.push(v / 2);
        }
        InvariantMatrix::new(model, out)
    }
}

const E6_GROUPS: [&[u32]; 3] = [&[1, 7], &[4, 8], &[5, 11]];
const E7_GROUPS: [&[u32]; 3] = [&[1, 17], &[5, 13], &[7, 11]];
const E8_GROUPS: [&[u32]; 2] = [&[1, 11, 19, 29], &[7, 13, 17, 23]];

/// Reading of the E7 cross term `Z_9(v) · conj(Z_3(u) + Z_15(u))`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum E7Reading {
    /// Left factor indexes rows: the symmetric completion of the other cross term.
    Position,
    /// `u`-arguments index rows, so the term repeats the other cross term.
    Argument,
}

/// Builds the matrix of `row` for `model`.
pub fn build_catalog(model: &MinimalModel, row: CatalogRow) -> Result<InvariantMatrix> {
    build(model, row, E7Reading::Position)
}

/// The E7 rows under the argument-based reading of the final cross term.
/// Other rows have a single reading and come back unchanged.
pub fn build_catalog_literal(model: &MinimalModel, row: CatalogRow) -> Result<InvariantMatrix> {
    build(model, row, E7Reading::Argument)
}

fn build(model: &MinimalModel, row: CatalogRow, e7: E7Reading) -> Result<InvariantMatrix> {
    let (p, q) = (model.p(), model.q());
    if !row.applies(p, q) {
        return Err(Error::Domain(format!("row {row} does not apply to ({p},{q})")));
    }
    let t = Transversal::new(model);
    let mut x = Twice::new(&t);
    // Exceptional rows: `slot_s` puts the group index in s, summing r.
    let exceptional = |x: &mut Twice, groups: &[&[u32]], slot_s: bool| {
        let (outer_max, label) = if slot_s { (q, true) } else { (p, false) };
        for o in 1..outer_max {
            let mk = |e: u32| if label { (o, e) } else { (e, o) };
            for g in groups {
                let v: Vec<_> = g.iter().map(|&e| mk(e)).collect();
                x.outer(&v, &v, 1);
            }
        }
    };
    let e7_extra = |x: &mut Twice, slot_s: bool| {
        let outer_max = if slot_s { q } else { p };
        for o in 1..outer_max {
            let mk = |e: u32| if slot_s { (o, e) } else { (e, o) };
            let nine = [mk(9)];
            let three = [mk(3), mk(15)];
            x.outer(&nine, &nine, 1);
            x.outer(&three, &nine, 1);
            match e7 {
                E7Reading::Position => x.outer(&nine, &three, 1),
                E7Reading::Argument => x.outer(&three, &nine, 1),
            }
        }
    };
    match row {
        CatalogRow::A => {
            for i in 0..t.len() {
                let l = t.labels[i];
                x.outer(&[(l.r, l.s)], &[(l.r, l.s)], 2);
            }
        }
        CatalogRow::DQOdd => {
            for r in (1..q).step_by(2) {
                for s in (1..p).filter(|s| (r + s) % 2 == 0) {
                    let v = [(r, s), (q - r, s)];
                    x.outer(&v, &v, 1);
                }
            }
        }
        CatalogRow::DPOdd => {
            for s in (1..p).step_by(2) {
                for r in (1..q).filter(|r| (r + s) % 2 == 0) {
                    let v = [(r, s), (r, p - s)];
                    x.outer(&v, &v, 1);
                }
            }
        }
        CatalogRow::DQEven => {
            let half = q / 2;
            for s in 1..p {
                for r in 1..q {
                    if r % 2 == 1 {
                        x.outer(&[(r, s)], &[(r, s)], 1);
                    } else if r != half {
                        x.outer(&[(r, s)], &[(q - r, s)], 1);
                    }
                }
                x.outer(&[(half, s)], &[(half, s)], 1);
            }
        }
        CatalogRow::DPEven => {
            let half = p / 2;
            for r in 1..q {
                for s in 1..p {
                    if s % 2 == 1 {
                        x.outer(&[(r, s)], &[(r, s)], 1);
                    } else if s != half {
                        x.outer(&[(r, s)], &[(r, p - s)], 1);
                    }
                }
                x.outer(&[(r, half)], &[(r, half)], 1);
            }
        }
        CatalogRow::E6Q12 => exceptional(&mut x, &E6_GROUPS, true),
        CatalogRow::E6P12 => exceptional(&mut x, &E6_GROUPS, false),
        CatalogRow::E7Q18 => {
            exceptional(&mut x, &E7_GROUPS, true);
            e7_extra(&mut x, true);
        }
        CatalogRow::E7P18 => {
            exceptional(&mut x, &E7_GROUPS, false);
            e7_extra(&mut x, false);
        }
        CatalogRow::E8Q30 => exceptional(&mut x, &E8_GROUPS, true),
        CatalogRow::E8P30 => exceptional(&mut x, &E8_GROUPS, false),
    }
    let m = x.halve(model, row.tag())?;
    if let Some((i, j, v)) = m.nonzero().into_iter().find(|t| t.2 < 0) {
        return Err(Error::Assertion(format!("{row}: negative entry {v} at ({i},{j})")));
    }
    if m.get(0, 0) != 1 {
        return Err(Error::Assertion(format!("{row}: vacuum entry is {}", m.get(0, 0))));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal_model::KacLabel;

    fn m(p: u32, q: u32) -> MinimalModel {
        MinimalModel::new(p, q).unwrap()
    }

    #[test]
    fn a_row_is_identity() {
        let model = m(4, 3);
        assert_eq!(build_catalog(&model, CatalogRow::A).unwrap(), InvariantMatrix::identity(&model));
    }

    #[test]
    fn d_p_even_at_ising_is_a() {
        let model = m(4, 3);
        assert_eq!(build_catalog(&model, CatalogRow::DPEven).unwrap(), InvariantMatrix::identity(&model));
    }

    #[test]
    fn e6_vacuum_row() {
        let model = m(12, 11);
        let x = build_catalog(&model, CatalogRow::E6Q12).unwrap();
        assert_eq!(x.get(0, 0), 1);
        assert_eq!(x.at(KacLabel::VACUUM, KacLabel::new(1, 7)).unwrap(), 1);
        assert_eq!(x.vacuum_row_support(), vec![KacLabel::VACUUM, model.fold(1, 7).unwrap()]);
    }

    #[test]
    fn tags_parse() {
        for r in CatalogRow::ALL {
            assert_eq!(r.tag().parse::<CatalogRow>().unwrap(), r);
        }
        assert_eq!("e6_q12".parse::<CatalogRow>().unwrap(), CatalogRow::E6Q12);
        assert!("E9".parse::<CatalogRow>().is_err());
    }

    #[test]
    fn inapplicable_row_is_rejected() {
        assert!(matches!(build_catalog(&m(5, 2), CatalogRow::E6Q12), Err(Error::Domain(_))));
    }

    #[test]
    fn e7_readings_differ() {
        let model = m(18, 5);
        let pos = build_catalog(&model, CatalogRow::E7Q18).unwrap();
        let arg = build_catalog_literal(&model, CatalogRow::E7Q18).unwrap();
        assert!(pos.is_symmetric());
        assert_ne!(pos, arg);
    }
}
