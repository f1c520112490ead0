//! Constructors: the cyclotomic system, Coleman systems, the trivial system,
//! and systems induced from values at the full cyclotomic levels.

use std::collections::{BTreeMap, BTreeSet};

use super::{index_in_full_level, FiniteEulerSystem, LevelLattice};
use super::verify::{verify_distribution, DistributionReport};
use crate::arith::{is_prime, prime_divisors};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::fields::{norm_over_cosets, AbelianField};

fn check_min_level(level: u64) -> Result<()> {
    if level < 3 {
        return Err(Error::InvalidLevel(level));
    }
    Ok(())
}

/// `N_{Q(zeta_m)/E}(x)` for `x` in `Q(zeta_m)`, `m = m(E)`.
pub(crate) fn norm_from_full_level(field: &AbelianField, x: &CyclotomicNumber) -> CyclotomicNumber {
    let m = field.modulus();
    let full = AbelianField::cyclotomic(m).expect("canonical modulus");
    norm_over_cosets(x, field.subgroup(), &full)
}

/// `c_E = N_{Q(zeta_m)/E}(1 - zeta_m)` at `m = m(E)`, with `c_Q = 1`.
pub fn cyclotomic_component(field: &AbelianField) -> CyclotomicNumber {
    let f = field.canonicalize();
    let m = f.modulus();
    if m == 1 {
        return CyclotomicNumber::one(1);
    }
    norm_from_full_level(&f, &CyclotomicNumber::one_minus_zeta(m, 1))
}

/// The cyclotomic system: [`cyclotomic_component`] at every field.
pub fn cyclotomic_system(level: u64) -> Result<FiniteEulerSystem> {
    check_min_level(level)?;
    let lattice = LevelLattice::new(level)?;
    let components: BTreeMap<_, _> = lattice
        .fields()
        .iter()
        .map(|f| (f.clone(), cyclotomic_component(f)))
        .collect();
    let mut sys = FiniteEulerSystem::from_parts(level, components, "cyclotomic");
    sys.push_note("component at Q set to 1 (the defining norm degenerates at conductor 1)");
    Ok(sys)
}

fn signed_system(
    level: u64,
    provenance: String,
    counts: impl Fn(u64) -> bool,
) -> Result<FiniteEulerSystem> {
    let lattice = LevelLattice::new(level)?;
    let components = lattice
        .fields()
        .iter()
        .map(|f| {
            let m = f.modulus();
            let odd = counts(m) && index_in_full_level(f) % 2 == 1;
            (f.clone(), CyclotomicNumber::from_integer(m, if odd { -1 } else { 1 }))
        })
        .collect();
    Ok(FiniteEulerSystem::from_parts(level, components, provenance))
}

/// The Coleman system for a set of odd primes: `u_E = (-1)^[Q(zeta_m):E]`
/// when every prime factor of `m = m(E)` lies in `primes`, and 1 otherwise.
/// `m = 1` counts as supported, so `u_Q = -1`.
pub fn coleman_system(primes: &[u64], level: u64) -> Result<FiniteEulerSystem> {
    check_min_level(level)?;
    if primes.is_empty() {
        return Err(Error::InvalidArgument("empty prime set".into()));
    }
    for &p in primes {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
    }
    coleman_pattern(&primes.iter().copied().collect(), level)
}

/// Sign pattern `u_E = (-1)^[Q(zeta_m):E]` when the prime factors of
/// `m = m(E)` all lie in `primes`, at any level. The empty set gives the
/// system that is -1 at Q only.
pub(crate) fn coleman_pattern(primes: &BTreeSet<u64>, level: u64) -> Result<FiniteEulerSystem> {
    let label = primes.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    signed_system(level, format!("coleman:{{{label}}}"), |m| {
        prime_divisors(m).iter().all(|p| primes.contains(p))
    })
}

/// The Coleman system for the set of all odd primes.
pub fn coleman_odd(level: u64) -> Result<FiniteEulerSystem> {
    check_min_level(level)?;
    signed_system(level, "coleman:odd".into(), |m| m % 2 == 1)
}

pub fn trivial_system(level: u64) -> Result<FiniteEulerSystem> {
    check_min_level(level)?;
    signed_system(level, "trivial".into(), |_| false)
}

/// Build a system from values `f(zeta_m)` at the full levels `m | N`,
/// `m > 1`, and verify it. Lower fields get the norm from their full level;
/// the component at Q is 1.
pub fn extend_from_full_levels(
    values: &BTreeMap<u64, CyclotomicNumber>,
    level: u64,
) -> Result<(FiniteEulerSystem, DistributionReport)> {
    check_min_level(level)?;
    let lattice = LevelLattice::new(level)?;
    let mut full = BTreeMap::new();
    for f in lattice.fields() {
        let m = f.modulus();
        if m == 1 || full.contains_key(&m) {
            continue;
        }
        let v = values
            .get(&m)
            .ok_or_else(|| Error::MissingComponent(format!("value at conductor {m}")))?;
        if v.is_zero() {
            return Err(Error::InvalidArgument(format!("value at conductor {m} is zero")));
        }
        if m % v.conductor() != 0 {
            return Err(Error::NotInField(format!("value given at conductor {m} is not in Q(zeta_{m})")));
        }
        full.insert(m, v.lift(m)?);
    }
    let components = lattice
        .fields()
        .iter()
        .map(|f| {
            let v = match full.get(&f.modulus()) {
                None => CyclotomicNumber::one(1),
                Some(x) => norm_from_full_level(f, x),
            };
            (f.clone(), v)
        })
        .collect();
    let mut sys = FiniteEulerSystem::from_parts(level, components, "derived");
    sys.push_note("component at Q set to 1");
    let report = verify_distribution(&sys)?;
    Ok((sys, report))
}
