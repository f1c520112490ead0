//! Exact verification of the norm (distribution) relations.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{FiniteEulerSystem, LevelLattice};
use crate::arith::is_prime_power;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::fields::{norm_over_cosets, AbelianField};
use crate::group_ring::IntElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    /// Covering pairs plus every pair with Q at the bottom. Relations compose
    /// along chains, so this is equivalent to `AllPairs`.
    Covering,
    AllPairs,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: PairMode,
    /// Also check `(Q, E')` with `m(E')` a prime power. Off by default since
    /// the cyclotomic system fails these by construction.
    pub include_rational_prime_power: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: PairMode::Covering, include_rational_prime_power: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub sub: AbelianField,
    pub sup: AbelianField,
    pub primes: Vec<u64>,
}

impl PairRecord {
    fn to_json(&self) -> Value {
        json!({"sub": self.sub.to_string(), "sup": self.sup.to_string(), "primes": self.primes})
    }
}

#[derive(Clone, Debug)]
pub struct DistributionReport {
    pub level: u64,
    pub mode: PairMode,
    pub pairs_checked: usize,
    pub violations: Vec<PairRecord>,
    pub excluded: Vec<PairRecord>,
}

impl DistributionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "mode": match self.mode { PairMode::Covering => "covering", PairMode::AllPairs => "all_pairs" },
            "pairs_checked": self.pairs_checked,
            "passed": self.passed(),
            "violations": self.violations.iter().map(PairRecord::to_json).collect::<Vec<_>>(),
            "excluded": self.excluded.iter().map(PairRecord::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn verify_distribution(sys: &FiniteEulerSystem) -> Result<DistributionReport> {
    verify_distribution_with(sys, &VerifyOptions::default())
}

/// Check `N_{E'/E}(u_{E'}) = u_E^{prod (1 - sigma_l)}` over the pairs
/// selected by `opts`, `l` running over primes ramified in `E'` but not `E`
/// and `sigma_l` the inverse Frobenius.
pub fn verify_distribution_with(sys: &FiniteEulerSystem, opts: &VerifyOptions) -> Result<DistributionReport> {
    let lattice = LevelLattice::new(sys.level())?;
    let present: Vec<bool> = lattice.fields().iter().map(|f| sys.get(f).is_some()).collect();
    let mut pairs = match opts.mode {
        PairMode::AllPairs => lattice.all_pairs(),
        PairMode::Covering => {
            let mut v = lattice.covering_pairs();
            if let Some(q) = lattice.fields().iter().position(AbelianField::is_rationals) {
                v.extend(lattice.all_pairs().into_iter().filter(|&(i, _)| i == q));
            }
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    if sys.restricted_to().is_some() {
        // on a sublattice, chains may leave it; check every pair inside
        pairs = lattice.all_pairs();
    }
    pairs.retain(|&(i, j)| present[i] && present[j]);

    let fields = lattice.fields();
    let mut excluded = Vec::new();
    let mut todo = Vec::new();
    for (i, j) in pairs {
        let (e, e2) = (&fields[i], &fields[j]);
        let primes = e.ramified_primes_between(e2)?;
        let rec = PairRecord { sub: e.clone(), sup: e2.clone(), primes };
        if e.is_rationals() && is_prime_power(e2.modulus()) && !opts.include_rational_prime_power {
            excluded.push(rec);
        } else {
            todo.push(rec);
        }
    }
    let checked = todo.len();
    let results: Vec<Result<Option<PairRecord>>> = todo
        .into_par_iter()
        .map(|rec| {
            let ok = relation_holds(sys, &rec)?;
            Ok(if ok { None } else { Some(rec) })
        })
        .collect();
    let mut violations = Vec::new();
    for r in results {
        if let Some(rec) = r? {
            violations.push(rec);
        }
    }
    Ok(DistributionReport { level: sys.level(), mode: opts.mode, pairs_checked: checked, violations, excluded })
}

/// `prod_l (1 - sigma_l)` in `Z[Gal(E/Q)]`.
pub(crate) fn euler_factor(e: &AbelianField, primes: &[u64]) -> Result<IntElement> {
    let group = e.galois_group();
    let mut acc = IntElement::one(Arc::clone(&group));
    for &l in primes {
        let s = group.index_of(e.inverse_frobenius(l)? as i64)?;
        let factor = IntElement::one(Arc::clone(&group)).sub(&IntElement::basis(Arc::clone(&group), s))?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

fn relation_holds(sys: &FiniteEulerSystem, rec: &PairRecord) -> Result<bool> {
    let missing = |f: &AbelianField| Error::MissingComponent(f.to_string());
    let u_sup = sys.get(&rec.sup).ok_or_else(|| missing(&rec.sup))?;
    let u_sub = sys.get(&rec.sub).ok_or_else(|| missing(&rec.sub))?;
    pair_relation(rec, u_sub, u_sup)
}

/// The relation for one pair, on components written at their fields'
/// conductors.
pub(crate) fn pair_relation(rec: &PairRecord, u_sub: &CyclotomicNumber, u_sup: &CyclotomicNumber) -> Result<bool> {
    let m2 = rec.sup.modulus();
    let lo = rec.sub.lift_to(m2)?;
    let u_sup = u_sup.lift(m2)?;
    let lhs = norm_over_cosets(&u_sup, lo.subgroup(), &rec.sup);
    let rhs = if rec.primes.is_empty() {
        u_sub.clone()
    } else {
        euler_factor(&rec.sub, &rec.primes)?.apply_unchecked(u_sub)?
    };
    Ok(lhs == rhs)
}
