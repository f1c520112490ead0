//! Finite-level Euler systems for the multiplicative group over Q.

mod construct;
mod lattice;
mod ops;
mod strict;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::arith::euler_phi;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::fields::AbelianField;

pub use construct::{coleman_odd, cyclotomic_component, coleman_system, cyclotomic_system, extend_from_full_levels, trivial_system};
pub use lattice::{level_fields, LevelLattice};
pub use strict::{check_strict, check_strict_with, StrictFailure, StrictOptions, StrictReport};
pub(crate) use construct::{coleman_pattern, norm_from_full_level};
pub(crate) use verify::pair_relation;

#[cfg(test)]
mod tests;

pub use verify::{
    verify_distribution, verify_distribution_with, DistributionReport, PairMode, PairRecord,
    VerifyOptions,
};

/// A family `(u_E)` over the abelian fields of conductor dividing `level`.
///
/// Keys are canonical field encodings and every value is written at the
/// conductor of its field. A system restricted to a sublattice carries only
/// part of the fields; see [`FiniteEulerSystem::restricted_to`].
#[derive(Clone, PartialEq)]
pub struct FiniteEulerSystem {
    level: u64,
    components: BTreeMap<AbelianField, CyclotomicNumber>,
    provenance: String,
    notes: Vec<String>,
    restricted_to: Option<u64>,
}

impl FiniteEulerSystem {
    /// Validate and build a system over every field of conductor dividing
    /// `level`. Field encodings are canonicalized.
    pub fn new(
        level: u64,
        components: impl IntoIterator<Item = (AbelianField, CyclotomicNumber)>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        Self::build(level, components, provenance.into(), None)
    }

    fn build(
        level: u64,
        components: impl IntoIterator<Item = (AbelianField, CyclotomicNumber)>,
        provenance: String,
        restricted_to: Option<u64>,
    ) -> Result<Self> {
        let lattice = LevelLattice::new(level)?;
        let base = match restricted_to {
            Some(p) if p > 0 && level % p == 0 => AbelianField::cyclotomic(crate::arith::canonical_conductor(p))?,
            Some(p) => return Err(Error::NotDivisible { from: p, to: level }),
            None => AbelianField::rationals(),
        };
        let wanted: Vec<&AbelianField> = lattice.fields().iter().filter(|f| f.contains_field(&base)).collect();
        let mut map = BTreeMap::new();
        for (field, value) in components {
            let field = field.canonicalize();
            let m = field.modulus();
            if level % m != 0 {
                return Err(Error::InvalidArgument(format!(
                    "field {field} has conductor {m}, which does not divide level {level}"
                )));
            }
            if !field.contains_field(&base) {
                return Err(Error::InvalidArgument(format!("field {field} is outside the restricted lattice")));
            }
            if value.is_zero() {
                return Err(Error::InvalidArgument(format!("component at {field} is zero")));
            }
            if !field.contains_element(&value) {
                return Err(Error::NotInField(format!("component at {field} is not in the field")));
            }
            let value = value.descend(m)?;
            if map.insert(field.clone(), value).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate component at {field}")));
            }
        }
        for f in &wanted {
            if !map.contains_key(*f) {
                return Err(Error::MissingComponent(f.to_string()));
            }
        }
        Ok(FiniteEulerSystem { level, components: map, provenance, notes: Vec::new(), restricted_to })
    }

    pub(crate) fn from_parts(
        level: u64,
        components: BTreeMap<AbelianField, CyclotomicNumber>,
        provenance: impl Into<String>,
    ) -> Self {
        FiniteEulerSystem { level, components, provenance: provenance.into(), notes: Vec::new(), restricted_to: None }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn set_provenance(&mut self, p: impl Into<String>) {
        self.provenance = p.into();
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub(crate) fn push_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// `Some(p)` when only fields containing `Q(zeta_p)` are present.
    pub fn restricted_to(&self) -> Option<u64> {
        self.restricted_to
    }

    pub fn components(&self) -> &BTreeMap<AbelianField, CyclotomicNumber> {
        &self.components
    }

    pub fn fields(&self) -> impl Iterator<Item = &AbelianField> {
        self.components.keys()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Component at a field given in any encoding.
    pub fn get(&self, field: &AbelianField) -> Option<&CyclotomicNumber> {
        if field.is_canonical() {
            self.components.get(field)
        } else {
            self.components.get(&field.canonicalize())
        }
    }

    /// Component at `Q(zeta_m)`.
    pub fn full_level(&self, m: u64) -> Option<&CyclotomicNumber> {
        AbelianField::cyclotomic(m).ok().and_then(|f| self.components.get(&f))
    }

    /// Replace one component, keeping everything else (used to build
    /// corrupted inputs in tests and tooling).
    pub fn with_component(&self, field: &AbelianField, value: CyclotomicNumber) -> Result<Self> {
        let f = field.canonicalize();
        if !self.components.contains_key(&f) {
            return Err(Error::MissingComponent(f.to_string()));
        }
        if value.is_zero() || !f.contains_element(&value) {
            return Err(Error::NotInField(format!("replacement at {f}")));
        }
        let value = value.descend(f.modulus())?;
        let mut out = self.clone();
        out.components.insert(f, value);
        out.provenance = "derived".into();
        Ok(out)
    }

    pub fn is_trivial(&self) -> bool {
        self.components.values().all(CyclotomicNumber::is_one)
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|(f, v)| json!({"field": f, "value": v}))
            .collect();
        let mut v = json!({"level": self.level, "components": comps, "provenance": self.provenance});
        if let Some(p) = self.restricted_to {
            v["restricted_to"] = json!(p);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("system file: {what}"));
        let level = v.get("level").and_then(Value::as_u64).ok_or_else(|| bad("missing level"))?;
        let provenance = v.get("provenance").and_then(Value::as_str).unwrap_or("file").to_string();
        let comps = v.get("components").and_then(Value::as_array).ok_or_else(|| bad("missing components"))?;
        let mut pairs = Vec::with_capacity(comps.len());
        for c in comps {
            let field: AbelianField = crate::json::from_value(c.get("field").cloned().ok_or_else(|| bad("component without field"))?)?;
            let value: CyclotomicNumber = crate::json::from_value(c.get("value").cloned().ok_or_else(|| bad("component without value"))?)?;
            pairs.push((field, value));
        }
        let restricted = match v.get("restricted_to") {
            None | Some(Value::Null) => None,
            Some(p) => Some(p.as_u64().ok_or_else(|| bad("restricted_to must be an integer"))?),
        };
        Self::build(level, pairs, provenance, restricted)
    }
}

impl fmt::Debug for FiniteEulerSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system at level {} ({})", self.level, self.provenance)?;
        for (k, v) in &self.components {
            writeln!(f, "  {k}: {v}")?;
        }
        Ok(())
    }
}

/// `[Q(zeta_m) : E]` for a canonical field at modulus `m`.
pub(crate) fn index_in_full_level(field: &AbelianField) -> u64 {
    euler_phi(field.modulus()) / field.degree()
}
