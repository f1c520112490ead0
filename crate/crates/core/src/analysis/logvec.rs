//! Logarithmic embeddings with certified interval entries.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::factorize;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::fields::{AbelianField, GaloisGroup};
use crate::interval::Interval;

/// `log |sigma(x)|` at each archimedean place of `L`, doubled at complex
/// places, and the valuation at the prime above `p` when `m(L) = p^k`.
///
/// Places are indexed by `Gal(L^+/Q)` written at modulus `m(L)`; the place
/// of index `i` is the embedding `zeta -> exp(2 pi i a / m)` for the
/// representative `a` of element `i`.
#[derive(Clone, Debug)]
pub struct LogVector {
    pub field: AbelianField,
    pub places: Arc<GaloisGroup>,
    pub entries: Vec<Interval>,
    /// `(p, v_p)` for prime-power conductor.
    pub valuation: Option<(u64, i64)>,
}

impl LogVector {
    /// Sum of the archimedean entries.
    pub fn archimedean_sum(&self) -> Interval {
        let prec = self.entries[0].precision();
        self.entries.iter().fold(Interval::zero(prec), |a, e| a.add(e))
    }

    /// Entries of `sigma_b(x)`, where `b` is a group index: the entry at
    /// place `i` is the entry of `x` at `i * b`.
    pub fn permuted(&self, b: usize) -> Vec<Interval> {
        (0..self.entries.len())
            .map(|i| self.entries[self.places.mul(i, b)].clone())
            .collect()
    }

    /// Archimedean entries followed by the valuation, if any.
    pub fn coordinates(&self) -> Vec<Interval> {
        let prec = self.entries[0].precision();
        let mut out = self.entries.clone();
        if let Some((_, v)) = self.valuation {
            out.push(Interval::from_int(v, prec));
        }
        out
    }

    /// Whether some coordinate is certainly nonzero.
    pub fn certified_nonzero(&self) -> bool {
        self.valuation.is_some_and(|(_, v)| v != 0) || self.entries.iter().any(|e| !e.contains_zero())
    }
}

/// Group of `L^+` at the modulus of the canonical `L`.
pub(crate) fn place_group(l: &AbelianField) -> Arc<GaloisGroup> {
    l.canonicalize().maximal_real_subfield().galois_group()
}

fn p_adic_valuation(q: &num_rational::BigRational, p: u64) -> i64 {
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut k = 0i64;
        while !n.is_zero() && n.is_multiple_of(&p) {
            n /= &p;
            k += 1;
        }
        k
    };
    count(q.numer().abs()) - count(q.denom().abs())
}

pub fn log_embedding(x: &CyclotomicNumber, l: &AbelianField, precision_bits: u32) -> Result<LogVector> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let l = l.canonicalize();
    if !l.contains_element(x) {
        return Err(Error::NotInField(format!("{x} is not in {l}")));
    }
    let m = l.modulus();
    let x = x.descend(m)?;
    let places = place_group(&l);
    let weight = if l.is_real() { 1 } else { 2 };
    let mut entries = Vec::with_capacity(places.order());
    for &a in places.reps() {
        let z = x.embed_complex(a as i64, precision_bits)?;
        let e = z.ln_abs().map_err(|_| Error::PrecisionExhausted { bits: precision_bits })?;
        entries.push(e.mul_int(weight));
    }
    let valuation = match factorize(m).as_slice() {
        [(p, _)] => {
            let norm = AbelianField::rationals().norm_from(&l, &x)?;
            let q = norm.as_rational().expect("norms to Q are rational");
            Some((*p, p_adic_valuation(&q, *p)))
        }
        _ => None,
    };
    Ok(LogVector { field: l, places, entries, valuation })
}
