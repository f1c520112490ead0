//! Group-ring action on systems, products, and restriction to the fields
//! above a fixed prime level.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::FiniteEulerSystem;
use crate::arith::{canonical_conductor, is_prime};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::fields::AbelianField;
use crate::group_ring::IntElement;

impl FiniteEulerSystem {
    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.level != o.level || self.restricted_to != o.restricted_to {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    fn derived(&self, components: BTreeMap<AbelianField, CyclotomicNumber>) -> Self {
        FiniteEulerSystem {
            level: self.level,
            components,
            provenance: "derived".into(),
            notes: self.notes.clone(),
            restricted_to: self.restricted_to,
        }
    }

    fn map_components(&self, f: impl Fn(&AbelianField, &CyclotomicNumber) -> Result<CyclotomicNumber> + Sync) -> Result<Self> {
        let out: Result<BTreeMap<_, _>> = self
            .components
            .par_iter()
            .map(|(k, v)| Ok((k.clone(), f(k, v)?)))
            .collect();
        Ok(self.derived(out?))
    }

    /// `u^r` for `r` in `Z[Gal(Q(zeta_N)/Q)]`, acting on `u_E` through the
    /// restriction of `r` to `Gal(E/Q)`.
    pub fn act(&self, r: &IntElement) -> Result<Self> {
        let top = AbelianField::cyclotomic(self.level)?;
        if r.field() != &top {
            return Err(Error::GroupMismatch);
        }
        self.map_components(|f, v| {
            let rr = r.restrict(&f.galois_group())?;
            let w = rr.apply_unchecked(v)?;
            w.descend(f.modulus())
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        self.map_components(|f, v| {
            let w = o.components.get(f).ok_or_else(|| Error::MissingComponent(f.to_string()))?;
            Ok(v * w)
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        self.map_components(|_, v| v.inverse())
    }

    pub fn conjugate(&self) -> Result<Self> {
        self.map_components(|_, v| Ok(v.conj()))
    }

    /// `u^{1+tau}`.
    pub fn one_plus_tau(&self) -> Result<Self> {
        self.map_components(|_, v| Ok(v * &v.conj()))
    }

    /// The components at fields containing `Q(zeta_p)`.
    pub fn restrict_level_p(&self, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.level % p != 0 {
            return Err(Error::NotDivisible { from: p, to: self.level });
        }
        let base = AbelianField::cyclotomic(canonical_conductor(p))?;
        let components = self
            .components
            .iter()
            .filter(|(k, _)| k.contains_field(&base))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Ok(FiniteEulerSystem {
            level: self.level,
            components,
            provenance: self.provenance.clone(),
            notes: self.notes.clone(),
            restricted_to: Some(p),
        })
    }
}
