//! Cyclotomic polynomials and reduction of integer polynomials modulo them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{divisors, euler_phi};

fn cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &phi_d);
    }
    let coeffs: Vec<i64> = num
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    debug_assert_eq!(coeffs.len() as u64, euler_phi(n) + 1);
    let arc = Arc::new(coeffs);
    cache().lock().unwrap().insert(n, Arc::clone(&arc));
    arc
}

fn exact_div_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

/// Evaluate `Phi_n(1)` exactly.
pub fn cyclotomic_at_one(n: u64) -> i64 {
    cyclotomic_polynomial(n).iter().sum()
}

/// Reduce `poly` (integer coefficients, any length) to the power basis of
/// `Q(zeta_n)`: first fold exponents modulo `n`, then divide by `Phi_n`.
pub fn reduce_in_place(poly: &mut Vec<BigInt>, n: u64) {
    let n_us = n as usize;
    if poly.len() > n_us {
        for i in n_us..poly.len() {
            let c = std::mem::take(&mut poly[i]);
            if !c.is_zero() {
                poly[i % n_us] += c;
            }
        }
        poly.truncate(n_us);
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for k in (deg..poly.len()).rev() {
        let c = std::mem::take(&mut poly[k]);
        if c.is_zero() {
            continue;
        }
        for (j, &d) in phi.iter().enumerate().take(deg) {
            if d != 0 {
                poly[k - deg + j] -= &c * d;
            }
        }
    }
    poly.resize(deg, BigInt::zero());
}

/// Product of two reduced polynomials, reduced again.
pub fn mul_reduced(a: &[BigInt], b: &[BigInt], n: u64) -> Vec<BigInt> {
    let n_us = n as usize;
    let len = (a.len() + b.len()).saturating_sub(1).min(n_us).max(1);
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[(i + j) % n_us] += x * y;
        }
    }
    reduce_in_place(&mut out, n);
    out
}

/// Dense polynomial over Q used for the extended Euclidean algorithm.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct QPoly(pub Vec<BigRational>);

impl QPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn sub(&self, other: &QPoly) -> QPoly {
        let len = self.0.len().max(other.0.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] -= c;
        }
        QPoly(out).trim()
    }

    fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).trim()
    }

    fn scale(&self, s: &BigRational) -> QPoly {
        QPoly(self.0.iter().map(|c| c * s).collect()).trim()
    }

    fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.0[dd].recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (QPoly(q).trim(), QPoly(rem).trim())
    }

    /// Inverse of `self` modulo `modulus`, if the two are coprime.
    pub fn inverse_mod(&self, modulus: &QPoly) -> Option<QPoly> {
        let (mut r0, mut r1) = (modulus.clone(), self.clone().trim());
        let (mut s0, mut s1) = (QPoly(Vec::new()), QPoly(vec![BigRational::one()]));
        while !r1.is_zero() {
            // keep remainders monic so coefficient growth stays tame
            let lead = r1.0.last().unwrap().recip();
            r1 = r1.scale(&lead);
            s1 = s1.scale(&lead);
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let g = r0.0[0].recip();
        Some(s0.scale(&g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn value_at_one() {
        assert_eq!(cyclotomic_at_one(9), 3);
        assert_eq!(cyclotomic_at_one(8), 2);
        assert_eq!(cyclotomic_at_one(15), 1);
        assert_eq!(cyclotomic_at_one(7), 7);
    }
}
