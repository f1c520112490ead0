//! The finite lattice of abelian fields with conductor dividing a level.

use std::collections::HashMap;

use crate::error::Result;
use crate::fields::{subfields, AbelianField};

/// Fields of conductor dividing `level`, canonicalized, with their fixing
/// subgroups also kept at the level for containment tests.
#[derive(Clone, Debug)]
pub struct LevelLattice {
    level: u64,
    fields: Vec<AbelianField>,
    at_level: Vec<Vec<u64>>,
    index: HashMap<AbelianField, usize>,
}

impl LevelLattice {
    pub fn new(level: u64) -> Result<Self> {
        let raw = subfields(level)?;
        let mut fields = Vec::with_capacity(raw.len());
        let mut at_level = Vec::with_capacity(raw.len());
        for f in raw {
            fields.push(f.canonicalize());
            at_level.push(f.subgroup().to_vec());
        }
        let index = fields.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Ok(LevelLattice { level, fields, at_level, index })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn fields(&self) -> &[AbelianField] {
        &self.fields
    }

    pub fn position(&self, f: &AbelianField) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// `fields[i]` is a subfield of `fields[j]`.
    pub fn is_sub(&self, i: usize, j: usize) -> bool {
        let big = &self.at_level[i];
        self.at_level[j].iter().all(|a| big.binary_search(a).is_ok())
    }

    /// Every proper nested pair `(i, j)` with `fields[i]` inside `fields[j]`.
    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.fields.len();
        let mut out = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if i != j && self.is_sub(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Proper nested pairs with no field strictly between them.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let all = self.all_pairs();
        all.iter()
            .copied()
            .filter(|&(i, j)| {
                !(0..self.fields.len()).any(|k| k != i && k != j && self.is_sub(i, k) && self.is_sub(k, j))
            })
            .collect()
    }
}

/// Canonical fields of conductor dividing `level`.
pub fn level_fields(level: u64) -> Result<Vec<AbelianField>> {
    Ok(LevelLattice::new(level)?.fields)
}
