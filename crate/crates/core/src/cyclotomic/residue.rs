use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::poly::cyclotomic_polynomial;
use super::CyclotomicNumber;
use crate::arith::{euler_phi, inv_mod, is_prime, mult_order, split_prime};
use crate::error::{Error, Result};
use crate::ffpoly::{equal_degree_factorization, FpPoly};

/// Seed used when callers do not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Reduction of a cyclotomic number modulo each prime above `prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub prime: u64,
    pub conductor: u64,
    /// Distinct monic irreducible factors of `Phi_n` mod `prime`, sorted.
    pub factors: Arc<Vec<FpPoly>>,
    /// Exponent of every factor in `Phi_n` mod `prime`.
    pub multiplicity: u64,
    /// One residue per factor, or `None` when some denominator is divisible
    /// by `prime`.
    pub residues: Option<Vec<FpPoly>>,
}

impl ResidueReport {
    pub fn is_integral(&self) -> bool {
        self.residues.is_some()
    }

    /// True when the value is integral and vanishes above every factor.
    pub fn all_zero(&self) -> bool {
        self.residues
            .as_ref()
            .is_some_and(|rs| rs.iter().all(FpPoly::is_zero))
    }

    pub fn factor_degree(&self) -> usize {
        self.factors[0].degree().unwrap_or(0)
    }
}

#[derive(Serialize)]
struct ReportJson {
    prime: u64,
    conductor: u64,
    multiplicity: u64,
    factors: Vec<String>,
    residues: Option<Vec<String>>,
}

impl ResidueReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            prime: self.prime,
            conductor: self.conductor,
            multiplicity: self.multiplicity,
            factors: self.factors.iter().map(|f| f.to_string()).collect(),
            residues: self
                .residues
                .as_ref()
                .map(|rs| rs.iter().map(|r| r.to_string()).collect()),
        })
        .expect("report serializes")
    }
}

type FactorCache = Mutex<HashMap<(u64, u64), Arc<Vec<FpPoly>>>>;

fn factor_cache() -> &'static FactorCache {
    static CACHE: OnceLock<FactorCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Distinct irreducible factors of `Phi_n` modulo the prime `l`, sorted.
///
/// Writing `n = l^k n'`, `Phi_n` is congruent to `Phi_{n'}^{phi(l^k)}`, and
/// `Phi_{n'}` is squarefree mod `l` with factors of degree `ord_{n'}(l)`.
pub fn cyclotomic_factors_mod(n: u64, l: u64, seed: u64) -> Arc<Vec<FpPoly>> {
    if let Some(f) = factor_cache().lock().unwrap().get(&(n, l)) {
        return Arc::clone(f);
    }
    let (_, rest) = split_prime(n, l);
    let phi = FpPoly::from_signed(l, &cyclotomic_polynomial(rest));
    let d = mult_order(l % rest.max(1), rest) as usize;
    let factors = Arc::new(equal_degree_factorization(&phi, d.max(1), seed));
    factor_cache()
        .lock()
        .unwrap()
        .insert((n, l), Arc::clone(&factors));
    factors
}

impl CyclotomicNumber {
    pub fn residues_above(&self, l: u64) -> Result<ResidueReport> {
        self.residues_above_seeded(l, DEFAULT_SEED)
    }

    /// Images of `self` in `F_l[T]/(g)` for every prime factor `g` of `Phi_n`.
    pub fn residues_above_seeded(&self, l: u64, seed: u64) -> Result<ResidueReport> {
        if !is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        let n = self.conductor();
        let factors = cyclotomic_factors_mod(n, l, seed);
        let (lk, _) = split_prime(n, l);
        let multiplicity = euler_phi(lk);
        let residues = self.reduce_mod_prime(l).map(|poly| {
            factors.iter().map(|g| poly.rem(g)).collect::<Vec<_>>()
        });
        Ok(ResidueReport { prime: l, conductor: n, factors, multiplicity, residues })
    }

    /// The coefficient vector reduced mod `l`, or `None` if not `l`-integral.
    fn reduce_mod_prime(&self, l: u64) -> Option<FpPoly> {
        let lb = BigInt::from(l);
        let den = self.denominator().mod_floor(&lb);
        if den.is_zero() {
            return None;
        }
        let inv = inv_mod(den.to_i64().unwrap(), l).ok()?;
        let coeffs = self.numerators().iter().map(|c| {
            let r = c.mod_floor(&lb).to_u64().unwrap();
            crate::arith::mul_mod(r, inv, l)
        });
        Some(FpPoly::new(l, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn residue_examples() {
        let r = CyclotomicNumber::one_minus_zeta(3, 1).residues_above(3).unwrap();
        assert_eq!(*r.factors, vec![FpPoly::from_signed(3, &[-1, 1])]);
        assert_eq!(r.multiplicity, 2);
        assert!(r.all_zero());

        let r = CyclotomicNumber::zeta(5).residues_above(2).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factor_degree(), 4);
        assert_eq!(r.residues.unwrap(), vec![FpPoly::x(2)]);

        let r = CyclotomicNumber::from_rational(1, &rat(1, 2)).residues_above(2).unwrap();
        assert!(!r.is_integral());
    }

    #[test]
    fn factor_counts_match_degree() {
        for n in 1..=60u64 {
            if n % 4 == 2 {
                continue;
            }
            for l in [2u64, 3, 5, 7, 11, 13] {
                let x = CyclotomicNumber::zeta(n);
                let r = x.residues_above(l).unwrap();
                let total = r.factors.len() as u64 * r.factor_degree() as u64 * r.multiplicity;
                assert_eq!(total, euler_phi(n), "n={n} l={l}");
                // product of factors^multiplicity is Phi_n mod l
                let prod = r.factors.iter().fold(FpPoly::one(l), |acc, g| {
                    (0..r.multiplicity).fold(acc, |a, _| a.mul(g))
                });
                assert_eq!(prod, FpPoly::from_signed(l, &cyclotomic_polynomial(n)), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn congruence_above_three() {
        // 1 - zeta_3 zeta_5 and 1 - zeta_5 agree above 3 since zeta_3 = 1 there
        let z3 = CyclotomicNumber::zeta(3);
        let z5 = CyclotomicNumber::zeta(5);
        let lhs = &CyclotomicNumber::one(15) - &(&z3 * &z5);
        let rhs = CyclotomicNumber::one_minus_zeta(5, 1);
        let d = (&lhs - &rhs).lift(15).unwrap();
        assert!(d.residues_above(3).unwrap().all_zero());
        // but 1 - zeta_5 itself is a unit above 3
        assert!(!rhs.lift(15).unwrap().residues_above(3).unwrap().all_zero());
    }
}
