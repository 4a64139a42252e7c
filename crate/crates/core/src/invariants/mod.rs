//! Modular invariants: the classification-table constructors, the
//! (M1)-(M3) verifier and exhaustive search in the commutant of {S, T}.

mod catalog;
mod commutant;
mod verify;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::minimal_model::{KacLabel, MinimalModel, Transversal};

pub use catalog::{build_catalog, build_catalog_literal, CatalogRow};
pub use commutant::{
    classify, classify_with_limit, commutant_basis, Classification, RationalMatrix, DEFAULT_CANDIDATE_LIMIT,
};
pub use verify::{m3_s_holds, verify_invariant, verify_with, InvariantReport};

/// Integer matrix indexed by the Kac transversal. Entries are signed so that
/// a failing (M1) is representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantMatrix {
    model: MinimalModel,
    labels: Vec<KacLabel>,
    entries: Vec<i64>,
}

impl InvariantMatrix {
    pub fn new(model: &MinimalModel, entries: Vec<i64>) -> Result<Self> {
        let labels = model.kac_transversal();
        if entries.len() != labels.len() * labels.len() {
            return Err(Error::Domain(format!("expected {}² entries, got {}", labels.len(), entries.len())));
        }
        Ok(InvariantMatrix { model: model.clone(), labels, entries })
    }

    pub fn identity(model: &MinimalModel) -> Self {
        let d = model.num_primaries();
        let mut e = vec![0; d * d];
        for i in 0..d {
            e[i * d + i] = 1;
        }
        Self::new(model, e).expect("square")
    }

    pub fn model(&self) -> &MinimalModel {
        &self.model
    }

    pub fn labels(&self) -> &[KacLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        let d = self.dim();
        self.entries[i * d + j] = v;
    }

    /// Entry at a pair of (possibly unfolded) labels.
    pub fn at(&self, a: KacLabel, b: KacLabel) -> Result<i64> {
        let t = Transversal::new(&self.model);
        Ok(self.get(t.index_of(a.r, a.s)?, t.index_of(b.r, b.s)?))
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim();
        let entries = (0..d * d).map(|k| self.get(k % d, k / d)).collect();
        InvariantMatrix { model: self.model.clone(), labels: self.labels.clone(), entries }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Nonzero entries as `(i, j, value)`, row-major.
    pub fn nonzero(&self) -> Vec<(usize, usize, i64)> {
        let d = self.dim();
        self.entries.iter().enumerate().filter(|(_, &v)| v != 0).map(|(k, &v)| (k / d, k % d, v)).collect()
    }

    /// Labels `j` with `X_{vac,j} != 0`.
    pub fn vacuum_row_support(&self) -> Vec<KacLabel> {
        (0..self.dim()).filter(|&j| self.get(0, j) != 0).map(|j| self.labels[j]).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SparseEntry {
    row: String,
    col: String,
    value: i64,
}

#[derive(Serialize, Deserialize)]
struct SparseJson {
    p: u32,
    q: u32,
    dim: usize,
    entries: Vec<SparseEntry>,
}

fn parse_label(s: &str) -> Option<(u32, u32)> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (r, s) = inner.split_once(',')?;
    Some((r.trim().parse().ok()?, s.trim().parse().ok()?))
}

impl Serialize for InvariantMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SparseJson {
            p: self.model.p(),
            q: self.model.q(),
            dim: self.dim(),
            entries: self
                .nonzero()
                .into_iter()
                .map(|(i, j, value)| SparseEntry { row: self.labels[i].to_string(), col: self.labels[j].to_string(), value })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InvariantMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let js = SparseJson::deserialize(d)?;
        let model = MinimalModel::new(js.p, js.q).map_err(D::Error::custom)?;
        let mut m = InvariantMatrix::new(&model, vec![0; js.dim * js.dim]).map_err(D::Error::custom)?;
        let t = Transversal::new(&model);
        for e in js.entries {
            let idx = |s: &str| {
                let (r, s) = parse_label(s).ok_or_else(|| D::Error::custom(format!("bad label {s}")))?;
                t.index_of(r, s).map_err(D::Error::custom)
            };
            let (i, j) = (idx(&e.row)?, idx(&e.col)?);
            m.set(i, j, e.value);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let model = MinimalModel::new(6, 5).unwrap();
        let mut x = InvariantMatrix::identity(&model);
        x.set(0, 3, 2);
        let js = serde_json::to_string(&x).unwrap();
        let back: InvariantMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
        assert!(!x.is_symmetric());
        assert_eq!(x.transpose().get(3, 0), 2);
    }
}
