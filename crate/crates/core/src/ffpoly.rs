//! Dense polynomials over a prime field and equal-degree factorization.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{inv_mod, mul_mod};

/// Polynomial over `F_p`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        FpPoly { p, coeffs }.trimmed()
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64))
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, [1])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::new(p, [0, 1])
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..len).map(|i| (get(&self.coeffs, i) + get(&o.coeffs, i)) % self.p))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        let p = self.p;
        Self::new(p, (0..len).map(|i| (get(&self.coeffs, i) + p - get(&o.coeffs, i)) % p))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead() as i64, self.p).expect("nonzero lead over a field");
        self.scale(inv)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let p = self.p;
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead() as i64, p).expect("nonzero lead over a field");
        let mut rem = self.coeffs.clone();
        let mut q = vec![0u64; rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(rem[k + dd], inv, p);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mul_mod(c, dj, p)) % p;
            }
        }
        rem.truncate(dd);
        (Self::new(p, q), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }
}

impl std::fmt::Display for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Split a monic squarefree `f` whose irreducible factors all have degree
/// `d` into those factors, sorted.
pub fn equal_degree_factorization(f: &FpPoly, d: usize, seed: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut stack = vec![f.monic()];
    while let Some(g) = stack.pop() {
        let deg = g.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        if deg == d {
            out.push(g);
            continue;
        }
        loop {
            let h = split_once(&g, d, &mut rng);
            let hd = h.degree().unwrap_or(0);
            if hd > 0 && hd < deg {
                let (q, r) = g.divrem(&h);
                debug_assert!(r.is_zero());
                stack.push(h);
                stack.push(q.monic());
                break;
            }
        }
    }
    out.sort();
    out
}

/// One randomized splitting attempt; returns a (possibly trivial) divisor.
fn split_once(g: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    let p = g.modulus();
    let deg = g.degree().unwrap();
    let a = FpPoly::new(p, (0..deg).map(|_| rng.random_range(0..p)));
    if a.degree().unwrap_or(0) == 0 {
        return FpPoly::one(p);
    }
    let direct = a.gcd(g);
    if direct.degree().unwrap_or(0) > 0 {
        return direct;
    }
    let b = if p == 2 {
        // trace map a + a^2 + ... + a^(2^(d-1))
        let mut t = a.clone();
        let mut sq = a.clone();
        for _ in 1..d {
            sq = sq.mul_mod(&sq, g);
            t = t.add(&sq);
        }
        t
    } else {
        let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1u32;
        a.pow_mod(&e, g).sub(&FpPoly::one(p))
    };
    if b.is_zero() {
        return g.clone();
    }
    b.gcd(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let p = 7;
        let a = FpPoly::from_signed(p, &[-1, 0, 1]); // x^2 - 1
        let b = FpPoly::from_signed(p, &[-1, 1]); // x - 1
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, FpPoly::from_signed(p, &[1, 1]));
    }

    #[test]
    fn splits_into_linear_factors() {
        // x^4 - 1 over F_5 has the four roots 1, 2, 3, 4
        let f = FpPoly::from_signed(5, &[-1, 0, 0, 0, 1]);
        let fs = equal_degree_factorization(&f, 1, 3);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(FpPoly::one(5), |a, b| a.mul(b));
        assert_eq!(prod, f);
    }

    #[test]
    fn splits_in_characteristic_two() {
        // Phi_7 = (x^3 + x + 1)(x^3 + x^2 + 1) over F_2
        let f = FpPoly::new(2, [1, 1, 1, 1, 1, 1, 1]);
        let fs = equal_degree_factorization(&f, 3, 11);
        assert_eq!(fs, vec![FpPoly::new(2, [1, 0, 1, 1]), FpPoly::new(2, [1, 1, 0, 1])]);
    }

    #[test]
    fn factorization_is_seed_independent() {
        // Phi_5 splits completely over F_11
        let f = FpPoly::new(11, [1, 1, 1, 1, 1]);
        let a = equal_degree_factorization(&f, 1, 1);
        let b = equal_degree_factorization(&f, 1, 99);
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }
}
