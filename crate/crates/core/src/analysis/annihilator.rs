//! Checks of the annihilator of `c_L^{1+tau}` and of the regulator ranks of
//! its isotypic parts.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::membership::PlusContext;
use crate::error::{Error, Result};
use crate::fields::AbelianField;
use crate::group_ring::{char_kills_el, characters, idempotent_el, Character, IntElement};
use crate::interval::{ComplexInterval, Interval};

#[derive(Clone, Debug)]
pub struct AnnihilatorOptions {
    pub trials: usize,
    pub seed: u64,
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for AnnihilatorOptions {
    fn default() -> Self {
        AnnihilatorOptions { trials: 10, seed: 0, start_bits: 128, max_bits: 1024 }
    }
}

#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub element: IntElement,
    /// Place (or the valuation, at index `order`) where the log vector of
    /// `y^r` is certified nonzero, and the precision used.
    pub witness: usize,
    pub bits: u32,
}

#[derive(Clone, Debug)]
pub struct AnnihilatorReport {
    pub field: AbelianField,
    pub basis: Vec<IntElement>,
    /// Every basis element kills `c_L^{1+tau}` exactly.
    pub basis_kills: bool,
    pub trials: Vec<TrialRecord>,
    /// Characters `psi` with `e_psi e_L = 0`.
    pub killed_characters: usize,
}

impl AnnihilatorReport {
    pub fn rank_matches(&self) -> bool {
        self.basis.len() == self.killed_characters
    }

    pub fn passed(&self) -> bool {
        self.basis_kills && self.rank_matches()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_string(),
            "basis": self.basis.iter().map(IntElement::to_json).collect::<Vec<_>>(),
            "basis_kills": self.basis_kills,
            "rank": self.basis.len(),
            "killed_characters": self.killed_characters,
            "trials": self.trials.iter().map(|t| json!({
                "element": t.element.to_json(),
                "witness": t.witness,
                "precision_bits": t.bits,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

/// A coordinate of the log vector of `y^r` certified nonzero, computed as
/// the combination of the orbit rows, with precision doubling.
pub fn certify_nonkilling(ctx: &PlusContext, r: &IntElement, start_bits: u32, max_bits: u32) -> Result<(usize, u32)> {
    let mut bits = start_bits;
    loop {
        let rows = ctx.orbit_rows(bits)?;
        let prec = rows[0][0].precision();
        let width = rows[0].len();
        let mut acc = vec![Interval::zero(prec); width];
        for (g, c) in r.coeffs().iter().enumerate() {
            if c == &num_bigint::BigInt::ZERO {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(&rows[g]) {
                *a = a.add(&v.mul_big(c));
            }
        }
        if let Some(i) = acc.iter().position(|v| !v.contains_zero()) {
            return Ok((i, bits));
        }
        if bits >= max_bits {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(max_bits);
    }
}

pub fn verify_annihilator(l: &AbelianField, opts: &AnnihilatorOptions) -> Result<AnnihilatorReport> {
    let field = l.canonicalize();
    if !field.is_real() {
        return Err(Error::InvalidArgument(format!("{field} is not real")));
    }
    let ctx = PlusContext::new(&field);
    let g = Arc::clone(&ctx.group);
    let mut basis_kills = true;
    for r in &ctx.annihilator {
        if !ctx.power(r)?.is_one() {
            basis_kills = false;
        }
    }
    let el = idempotent_el(&field);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut trials = Vec::with_capacity(opts.trials);
    while trials.len() < opts.trials {
        let coeffs: Vec<i64> = (0..g.order()).map(|_| rng.random_range(-3..=3)).collect();
        let r = IntElement::from_ints(Arc::clone(&g), &coeffs)?;
        if el.mul(&r.to_rational())?.is_zero() {
            continue;
        }
        let (witness, bits) = certify_nonkilling(&ctx, &r, opts.start_bits, opts.max_bits)?;
        trials.push(TrialRecord { element: r, witness, bits });
    }
    let mut killed = 0;
    for psi in characters(&g) {
        if char_kills_el(&psi, &field)? {
            killed += 1;
        }
    }
    Ok(AnnihilatorReport { field, basis: ctx.annihilator.clone(), basis_kills, trials, killed_characters: killed })
}

#[derive(Clone, Debug)]
pub enum RankOutcome {
    /// `e_psi e_L = 0`; nothing to check.
    Skipped,
    /// The isotypic projection is certified nonzero at this precision.
    RankOne { bits: u32 },
}

/// The `psi`-part `sum_h psi(h) log|sigma_h(y)|` of the orbit log lattice is
/// nonzero, so that part has rank exactly one (a cyclic module of an abelian
/// group has isotypic parts of dimension at most one).
pub fn regulator_rank_check(l: &AbelianField, psi: &Character, start_bits: u32, max_bits: u32) -> Result<RankOutcome> {
    let field = l.canonicalize();
    if char_kills_el(psi, &field)? {
        return Ok(RankOutcome::Skipped);
    }
    let ctx = PlusContext::new(&field);
    let k = psi.value_order();
    let mut bits = start_bits;
    loop {
        let v = ctx.log_vector(&ctx.generator, bits)?;
        let prec = v.entries[0].precision();
        let mut acc = ComplexInterval::zero(prec);
        for (h, e) in v.entries.iter().enumerate() {
            let w = ComplexInterval::root_of_unity(psi.exponent_at(h) as i64, k, prec);
            acc = acc.add(&w.scale(e));
        }
        if acc.excludes_zero() {
            return Ok(RankOutcome::RankOne { bits });
        }
        if bits >= max_bits {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(max_bits);
    }
}
