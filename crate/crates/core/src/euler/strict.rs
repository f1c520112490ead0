//! Strictness: `u_{E'} = sigma_l(u_E)` modulo every prime above `l` when the
//! conductor grows by exactly one new prime `l`.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::verify::PairRecord;
use super::{FiniteEulerSystem, LevelLattice};
use crate::arith::{inv_mod, is_prime};
use crate::error::{Error, Result};
use crate::fields::AbelianField;

#[derive(Clone, Debug, Default)]
pub struct StrictOptions {
    /// Check every nested pair with `m(E') = l m(E)`, `l` a prime not
    /// dividing `m(E)`, instead of only the pairs where `E' = E(zeta_l)`.
    pub literal: bool,
}

#[derive(Clone, Debug)]
pub struct StrictFailure {
    pub sub: AbelianField,
    pub sup: AbelianField,
    pub prime: u64,
    /// Residue of the difference above each prime of `Q(zeta_{m(E')})`.
    pub residues: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct StrictReport {
    pub level: u64,
    pub pairs_checked: usize,
    pub failures: Vec<StrictFailure>,
    pub non_integral: Vec<PairRecord>,
}

impl StrictReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.non_integral.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({"sub": f.sub.to_string(), "sup": f.sup.to_string(), "prime": f.prime, "residues": f.residues}))
            .collect();
        let non_integral: Vec<Value> = self
            .non_integral
            .iter()
            .map(|r| json!({"sub": r.sub.to_string(), "sup": r.sup.to_string(), "primes": r.primes}))
            .collect();
        json!({
            "level": self.level,
            "pairs_checked": self.pairs_checked,
            "passed": self.passed(),
            "failures": failures,
            "non_integral": non_integral,
        })
    }
}

pub fn check_strict(sys: &FiniteEulerSystem) -> Result<StrictReport> {
    check_strict_with(sys, &StrictOptions::default())
}

/// The new prime `l` when `m(E') = l m(E)` with `l` not dividing `m(E)`.
fn new_prime(e: &AbelianField, e2: &AbelianField) -> Option<u64> {
    let (m, m2) = (e.modulus(), e2.modulus());
    if m2 % m != 0 {
        return None;
    }
    let l = m2 / m;
    (l > 1 && is_prime(l) && m % l != 0).then_some(l)
}

/// `E' = E(zeta_l)`: reduction mod `m(E)` maps the fixing group of `E'`
/// isomorphically onto that of `E`.
fn restriction_is_bijective(e: &AbelianField, e2: &AbelianField) -> bool {
    let m = e.modulus();
    let (h, h2) = (e.subgroup(), e2.subgroup());
    h.len() == h2.len() && h2.iter().filter(|&&a| a % m == 1 % m).count() == 1
}

pub fn check_strict_with(sys: &FiniteEulerSystem, opts: &StrictOptions) -> Result<StrictReport> {
    let lattice = LevelLattice::new(sys.level())?;
    let fields = lattice.fields();
    let mut pairs = Vec::new();
    for (i, j) in lattice.all_pairs() {
        let (e, e2) = (&fields[i], &fields[j]);
        if sys.get(e).is_none() || sys.get(e2).is_none() {
            continue;
        }
        let Some(l) = new_prime(e, e2) else { continue };
        let applicable = e.modulus() > 1 && restriction_is_bijective(e, e2);
        if applicable || opts.literal {
            pairs.push((e.clone(), e2.clone(), l));
        }
    }
    let checked = pairs.len();
    let outcomes: Vec<Result<Outcome>> = pairs
        .into_par_iter()
        .map(|(e, e2, l)| check_pair(sys, e, e2, l))
        .collect();
    let mut failures = Vec::new();
    let mut non_integral = Vec::new();
    for o in outcomes {
        match o? {
            Outcome::Pass => {}
            Outcome::Fail(f) => failures.push(f),
            Outcome::NonIntegral(r) => non_integral.push(r),
        }
    }
    Ok(StrictReport { level: sys.level(), pairs_checked: checked, failures, non_integral })
}

enum Outcome {
    Pass,
    Fail(StrictFailure),
    NonIntegral(PairRecord),
}

fn check_pair(sys: &FiniteEulerSystem, e: AbelianField, e2: AbelianField, l: u64) -> Result<Outcome> {
    let missing = |f: &AbelianField| Error::MissingComponent(f.to_string());
    let u = sys.get(&e).ok_or_else(|| missing(&e))?;
    let u2 = sys.get(&e2).ok_or_else(|| missing(&e2))?;
    let (m, m2) = (e.modulus(), e2.modulus());
    let a = inv_mod(l as i64, m)?;
    let image = u.galois_mod(a, m).lift(m2)?;
    let d = &u2.lift(m2)? - &image;
    let report = d.residues_above(l)?;
    Ok(match report.residues {
        None => Outcome::NonIntegral(PairRecord { sub: e, sup: e2, primes: vec![l] }),
        Some(rs) if rs.iter().all(|r| r.is_zero()) => Outcome::Pass,
        Some(rs) => Outcome::Fail(StrictFailure {
            sub: e,
            sup: e2,
            prime: l,
            residues: rs.iter().map(ToString::to_string).collect(),
        }),
    })
}
