//! Enumeration of the systems whose full-level components are roots of
//! unity, at small levels.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::decompose::{decompose, DecomposeOutcome};
use crate::arith::{divisors, factorize, lcm};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::euler::{
    coleman_pattern, verify_distribution_with, FiniteEulerSystem, LevelLattice, PairMode, PairRecord, VerifyOptions,
};
use crate::fields::AbelianField;

/// Largest level accepted by [`torsion_enumerate`].
pub const MAX_TORSION_LEVEL: u64 = 225;

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub level: u64,
    pub systems: Vec<FiniteEulerSystem>,
    /// Order of each system in the group of systems.
    pub orders: Vec<u64>,
    /// Sign patterns spanning the restricted Coleman systems.
    pub coleman_span: Vec<FiniteEulerSystem>,
    pub span_contained: bool,
    /// Indices into `systems` of members outside the Coleman span.
    pub extras: Vec<usize>,
    /// Extras that are not `c^r` times a sign pattern either.
    pub outside_module: Vec<usize>,
    pub all_verified: bool,
}

impl TorsionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "count": self.systems.len(),
            "coleman_span_size": self.coleman_span.len(),
            "span_contained": self.span_contained,
            "all_verified": self.all_verified,
            "outside_cyclotomic_module": self.outside_module.len(),
            "systems": self.systems.iter().zip(&self.orders).enumerate().map(|(i, (s, o))| json!({
                "order": o,
                "extra": self.extras.contains(&i),
                "outside_cyclotomic_module": self.outside_module.contains(&i),
                "full_levels": full_level_summary(s),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `m -> (sign, j)` with `u_{Q(zeta_m)} = sign * zeta_m^j`.
fn full_level_summary(s: &FiniteEulerSystem) -> Value {
    let mut out = serde_json::Map::new();
    for (f, v) in s.components() {
        if f.degree() == crate::arith::euler_phi(f.modulus()) {
            out.insert(f.modulus().to_string(), json!(v.to_string()));
        }
    }
    Value::Object(out)
}

/// All roots of unity of `Q(zeta_m)`, `m` odd or divisible by 4.
fn roots_of_unity(m: u64) -> Vec<CyclotomicNumber> {
    let w = lcm(2, m.max(1));
    let z = if m % 2 == 1 { -CyclotomicNumber::zeta(m) } else { CyclotomicNumber::zeta(m) };
    let mut out = Vec::with_capacity(w as usize);
    let mut p = CyclotomicNumber::one(m);
    for _ in 0..w {
        out.push(p.clone());
        p = &p * &z;
    }
    out
}

fn root_order(v: &CyclotomicNumber, m: u64) -> u64 {
    let w = lcm(2, m.max(1));
    divisors(w).into_iter().find(|&d| v.pow(d as i64).is_ok_and(|p| p.is_one())).unwrap_or(0)
}

fn check_level(level: u64) -> Result<()> {
    let refuse = |reason: &str| Err(Error::Refused { level, reason: reason.into() });
    if level % 2 == 0 {
        return refuse("only odd levels are enumerated");
    }
    if factorize(level).len() > 2 {
        return refuse("at most two distinct prime factors");
    }
    if level > MAX_TORSION_LEVEL {
        return refuse("level too large for exhaustive enumeration");
    }
    Ok(())
}

/// Every system at `level` whose components at the fields `Q(zeta_m)`
/// (including `m = 1`) are roots of unity, the other components being the
/// norms from the full levels, that satisfies every distribution relation
/// (pairs with Q at the bottom included).
///
/// Full levels are assigned by increasing conductor; after each assignment
/// the relations whose larger field has that conductor are checked, which
/// prunes the search.
pub fn torsion_enumerate(level: u64) -> Result<TorsionReport> {
    check_level(level)?;
    let lattice = LevelLattice::new(level)?;
    let fields = lattice.fields().to_vec();
    let conductors: Vec<u64> = divisors(level);
    // pairs grouped by the conductor of the larger field
    let mut pairs_at: BTreeMap<u64, Vec<PairRecord>> = BTreeMap::new();
    for (i, j) in lattice.all_pairs() {
        let (e, e2) = (&fields[i], &fields[j]);
        let primes = e.ramified_primes_between(e2)?;
        pairs_at.entry(e2.modulus()).or_default().push(PairRecord { sub: e.clone(), sup: e2.clone(), primes });
    }
    let mut found = Vec::new();
    let mut assigned: BTreeMap<AbelianField, CyclotomicNumber> = BTreeMap::new();
    search(&conductors, 0, &fields, &pairs_at, &mut assigned, &mut found)?;

    let mut systems: Vec<FiniteEulerSystem> = found
        .into_iter()
        .map(|c| FiniteEulerSystem::new(level, c, "derived"))
        .collect::<Result<_>>()?;
    systems.sort_by_key(|s| crate::json::to_canonical_string(&s.to_json()));
    systems.dedup_by(|a, b| a.components() == b.components());

    let opts = VerifyOptions { mode: PairMode::AllPairs, include_rational_prime_power: true };
    let mut all_verified = true;
    for s in &systems {
        all_verified &= verify_distribution_with(s, &opts)?.passed();
    }
    let orders = systems
        .iter()
        .map(|s| s.components().iter().fold(1, |acc, (f, v)| lcm(acc, root_order(v, f.modulus()).max(1))))
        .collect();

    let span = coleman_span(level)?;
    let span_contained = span.iter().all(|t| systems.iter().any(|s| s.components() == t.components()));
    let extras: Vec<usize> = systems
        .iter()
        .enumerate()
        .filter(|(_, s)| !span.iter().any(|t| t.components() == s.components()))
        .map(|(i, _)| i)
        .collect();
    let outside_module = extras
        .par_iter()
        .map(|&i| Ok((i, matches!(decompose(&systems[i])?, DecomposeOutcome::NotFound(_)))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter_map(|(i, out)| out.then_some(i))
        .collect();
    Ok(TorsionReport { level, systems, orders, coleman_span: span, span_contained, extras, outside_module, all_verified })
}

/// The group generated by the sign patterns at `level`.
pub fn coleman_span(level: u64) -> Result<Vec<FiniteEulerSystem>> {
    let odd: Vec<u64> = crate::arith::prime_divisors(level).into_iter().filter(|&p| p != 2).collect();
    let gens: Vec<FiniteEulerSystem> = (0u32..1 << odd.len())
        .map(|mask| {
            let s: BTreeSet<u64> = odd.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            coleman_pattern(&s, level)
        })
        .collect::<Result<_>>()?;
    let mut span: Vec<FiniteEulerSystem> = vec![crate::euler::trivial_system(level)?];
    for g in &gens {
        let mut next = span.clone();
        for s in &span {
            let p = s.mul(g)?;
            if !next.iter().any(|t| t.components() == p.components()) {
                next.push(p);
            }
        }
        span = next;
    }
    Ok(span)
}

fn search(
    conductors: &[u64],
    depth: usize,
    fields: &[AbelianField],
    pairs_at: &BTreeMap<u64, Vec<PairRecord>>,
    assigned: &mut BTreeMap<AbelianField, CyclotomicNumber>,
    found: &mut Vec<BTreeMap<AbelianField, CyclotomicNumber>>,
) -> Result<()> {
    if depth == conductors.len() {
        found.push(assigned.clone());
        return Ok(());
    }
    let m = conductors[depth];
    let at_m: Vec<&AbelianField> = fields.iter().filter(|f| f.modulus() == m).collect();
    for root in roots_of_unity(m) {
        for f in &at_m {
            assigned.insert((*f).clone(), crate::euler::norm_from_full_level(f, &root));
        }
        let mut ok = true;
        for rec in pairs_at.get(&m).into_iter().flatten() {
            if !crate::euler::pair_relation(rec, &assigned[&rec.sub], &assigned[&rec.sup])? {
                ok = false;
                break;
            }
        }
        if ok {
            search(conductors, depth + 1, fields, pairs_at, assigned, found)?;
        }
    }
    for f in &at_m {
        assigned.remove(*f);
    }
    Ok(())
}
