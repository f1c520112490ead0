use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{characters, CycElement, Character, IntElement, RatElement};
use crate::arith::{is_prime_power, prime_divisors};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::fields::{AbelianField, GaloisGroup};
use crate::lattice::integer_kernel;
use crate::rational::common_denominator;

/// `e_H = |H|^{-1} sum_{h in H} h` for a subgroup given by element indices.
pub fn idempotent_subgroup(group: &Arc<GaloisGroup>, subgroup: &[usize]) -> Result<RatElement> {
    if !group.is_subgroup(subgroup) {
        return Err(Error::NotSubgroup(format!("{subgroup:?}")));
    }
    let mut idx = subgroup.to_vec();
    idx.sort_unstable();
    idx.dedup();
    let w = BigRational::new(BigInt::one(), BigInt::from(idx.len()));
    let mut e = RatElement::zero(Arc::clone(group));
    for i in idx {
        e.coeffs[i] = w.clone();
    }
    Ok(e)
}

/// `e_chi = |G|^{-1} sum_g chi(g^{-1}) g`, with scalars in `Q(zeta_k)`.
pub fn idempotent_char(chi: &Character) -> CycElement {
    let g = chi.group();
    let k = chi.value_order();
    let w = BigRational::new(BigInt::one(), BigInt::from(g.order()));
    let coeffs = (0..g.order())
        .map(|i| chi.value(g.inv(i)).scale(&w))
        .collect();
    let e = CycElement::new(Arc::clone(g), coeffs).expect("one coefficient per element");
    debug_assert!(e.coeffs().iter().all(|c| c.conductor() == k));
    e
}

/// Group of `L^+` (encoded at the modulus of `L`).
fn plus_group(l: &AbelianField) -> Arc<GaloisGroup> {
    l.maximal_real_subfield().galois_group()
}

/// Decomposition groups in `Gal(L^+/Q)` of the primes dividing `m(L)`, or
/// `None` when `m(L)` is 1 or a prime power.
fn decomposition_groups(l: &AbelianField, g: &GaloisGroup) -> Option<Vec<Vec<usize>>> {
    let m = l.conductor();
    if m == 1 || is_prime_power(m) {
        return None;
    }
    let lp = g.field();
    Some(
        prime_divisors(m)
            .into_iter()
            .map(|p| g.indices_of(&lp.decomposition_group(p)).expect("coset representatives"))
            .collect(),
    )
}

/// `e_L` in `Q[Gal(L^+/Q)]`: 1 when `m(L)` is 1 or a prime power, otherwise
/// the product of `1 - e_D` over decomposition groups of primes dividing `m(L)`.
pub fn idempotent_el(l: &AbelianField) -> RatElement {
    let g = plus_group(l);
    let one = RatElement::one(Arc::clone(&g));
    let Some(ds) = decomposition_groups(l, &g) else {
        return one;
    };
    ds.iter().fold(one.clone(), |acc, d| {
        let e = idempotent_subgroup(&g, d).expect("decomposition group is a subgroup");
        acc.mul(&one.sub(&e).unwrap()).unwrap()
    })
}

/// Whether `psi` is trivial on the decomposition group of some prime dividing
/// a composite `m(L)`; by construction of `e_L` this is `e_psi e_L = 0`.
pub fn el_predicate(psi: &Character, l: &AbelianField) -> bool {
    match decomposition_groups(l, psi.group()) {
        None => false,
        Some(ds) => ds.iter().any(|d| psi.is_trivial_on(d)),
    }
}

/// Exact test of `e_psi * e_L = 0` for a character of `Gal(L^+/Q)`.
pub fn char_kills_el(psi: &Character, l: &AbelianField) -> Result<bool> {
    if psi.group().field() != &l.maximal_real_subfield() {
        return Err(Error::GroupMismatch);
    }
    let k = psi.value_order();
    let el = idempotent_el(l).to_cyclotomic(k);
    Ok(idempotent_char(psi).mul(&el)?.is_zero())
}

/// `epsilon_E = sum of e_psi over characters of G whose fixed field is E`,
/// verified to have rational coefficients.
pub fn epsilon(group: &Arc<GaloisGroup>, e: &AbelianField) -> Result<RatElement> {
    let k = group.exponent();
    let mut acc = CycElement::zero_with(Arc::clone(group), CyclotomicNumber::zero(k));
    for psi in characters(group) {
        if psi.fixed_field().same_field(e) {
            acc = acc.add(&idempotent_char(&psi))?;
        }
    }
    acc.to_rational()
}

/// Z-basis (in Hermite normal form) of `{x in Z[Gal(L^+/Q)] : e_L x = 0}`.
pub fn annihilator_ideal(l: &AbelianField) -> Vec<IntElement> {
    let el = idempotent_el(l);
    let g = Arc::clone(el.group());
    let n = g.order();
    // row i is g_i * e_L; the left kernel is the annihilator
    let rows: Vec<RatElement> = (0..n)
        .map(|i| {
            let mut b = RatElement::zero(Arc::clone(&g));
            b.coeffs[i] = BigRational::one();
            b.mul(&el).unwrap()
        })
        .collect();
    let den = common_denominator(rows.iter().flat_map(|r| r.coeffs().iter()));
    let matrix: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.coeffs().iter().map(|c| (c * &den).to_integer()).collect())
        .collect();
    integer_kernel(&matrix)
        .into_iter()
        .map(|v| IntElement::new(Arc::clone(&g), v).unwrap())
        .filter(|v| !v.is_zero())
        .collect()
}
