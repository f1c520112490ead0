//! Subfields of cyclotomic fields, encoded by subgroups of `(Z/n)^x`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{
    self, crt, divisors, euler_phi, gcd, inv_mod, is_prime, lcm, mul_mod, prime_divisors,
    split_prime, units,
};
use crate::cyclotomic::{greedy_generators, CyclotomicNumber};
use crate::error::{Error, Result};

/// The field `Q(zeta_n)^H` for a subgroup `H` of `(Z/n)^x`.
///
/// The same field has many encodings (one per multiple of its conductor);
/// [`AbelianField::canonicalize`] picks the one at modulus `m(E)`. Derived
/// equality compares encodings, [`AbelianField::same_field`] compares fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr")]
pub struct AbelianField {
    modulus: u64,
    subgroup: Vec<u64>,
}

#[derive(Deserialize)]
struct FieldRepr {
    modulus: u64,
    subgroup: Vec<u64>,
}

impl TryFrom<FieldRepr> for AbelianField {
    type Error = Error;
    fn try_from(r: FieldRepr) -> Result<Self> {
        AbelianField::new(r.modulus, r.subgroup)
    }
}

/// Subgroup of `(Z/n)^x` generated by `gens`, sorted.
pub fn subgroup_closure(n: u64, gens: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let one = 1 % n;
    let mut elems: BTreeSet<u64> = [one].into_iter().collect();
    for g in gens {
        let g = g % n;
        if elems.contains(&g) {
            continue;
        }
        // multiply the current subgroup by successive powers of g
        let base: Vec<u64> = elems.iter().copied().collect();
        let mut power = g;
        while !elems.contains(&power) {
            for &h in &base {
                elems.insert(mul_mod(h, power, n));
            }
            power = mul_mod(power, g, n);
        }
    }
    elems.into_iter().collect()
}

fn check_modulus(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidLevel(n));
    }
    if n % 4 == 2 {
        return Err(Error::LevelTwoModFour(n));
    }
    Ok(())
}

impl AbelianField {
    pub fn new(modulus: u64, mut subgroup: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        subgroup.iter_mut().for_each(|a| *a %= modulus);
        subgroup.sort_unstable();
        subgroup.dedup();
        let n = modulus;
        if n > 1 && subgroup.iter().any(|&a| gcd(a, n) != 1) {
            return Err(Error::NotSubgroup(format!("non-unit residue modulo {n}")));
        }
        if !subgroup.contains(&(1 % n)) {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        let set: HashSet<u64> = subgroup.iter().copied().collect();
        for &a in &subgroup {
            for &b in &subgroup {
                if !set.contains(&mul_mod(a, b, n)) {
                    return Err(Error::NotSubgroup(format!("{a}*{b} not in the subset")));
                }
            }
        }
        Ok(AbelianField { modulus, subgroup })
    }

    pub fn from_generators(modulus: u64, gens: &[u64]) -> Result<Self> {
        check_modulus(modulus)?;
        if modulus > 1 {
            if let Some(&g) = gens.iter().find(|&&g| gcd(g, modulus) != 1) {
                return Err(Error::NotCoprime { a: g as i64, n: modulus });
            }
        }
        Ok(AbelianField { modulus, subgroup: subgroup_closure(modulus, gens.iter().copied()) })
    }

    pub fn rationals() -> Self {
        AbelianField { modulus: 1, subgroup: vec![0] }
    }

    /// `Q(zeta_m)`.
    pub fn cyclotomic(m: u64) -> Result<Self> {
        check_modulus(m)?;
        Ok(AbelianField { modulus: m, subgroup: vec![1 % m] })
    }

    /// `Q(zeta_m)^+`.
    pub fn real_cyclotomic(m: u64) -> Result<Self> {
        Self::from_generators(m, &[m.saturating_sub(1)])
    }

    /// Field fixed by the kernel of `(Z/n)^x -> (Z/m)^x`, i.e. `Q(zeta_m)`
    /// written at modulus `n`.
    pub fn cyclotomic_at(m: u64, n: u64) -> Result<Self> {
        check_modulus(n)?;
        if n % m != 0 {
            return Err(Error::NotDivisible { from: m, to: n });
        }
        let kernel = units(n).into_iter().filter(|&a| a % m == 1 % m).collect();
        Ok(AbelianField { modulus: n, subgroup: kernel })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn contains_residue(&self, a: u64) -> bool {
        self.subgroup.binary_search(&(a % self.modulus)).is_ok()
    }

    /// `[E : Q]`.
    pub fn degree(&self) -> u64 {
        euler_phi(self.modulus) / self.subgroup.len() as u64
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn is_real(&self) -> bool {
        self.modulus <= 2 || self.contains_residue(self.modulus - 1)
    }

    /// `m(E)`: the smallest admissible `f | n` whose kernel lies in `H`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus;
        for f in divisors(n) {
            if f % 4 == 2 {
                continue;
            }
            let kernel_inside = units(n)
                .into_iter()
                .filter(|&a| a % f == 1 % f)
                .all(|a| self.contains_residue(a));
            if kernel_inside {
                return f;
            }
        }
        unreachable!("the modulus itself always qualifies")
    }

    /// The same field encoded at modulus `m(E)`.
    pub fn canonicalize(&self) -> Self {
        self.reencode(self.conductor())
    }

    pub fn is_canonical(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// Image of `H` modulo a divisor `f` of the modulus that the field's
    /// conductor divides.
    fn reencode(&self, f: u64) -> Self {
        if f == self.modulus {
            return self.clone();
        }
        let mut sub: Vec<u64> = self.subgroup.iter().map(|&a| a % f).collect();
        sub.sort_unstable();
        sub.dedup();
        AbelianField { modulus: f, subgroup: sub }
    }

    /// The same field encoded at a multiple `big` of the modulus.
    pub fn lift_to(&self, big: u64) -> Result<Self> {
        check_modulus(big)?;
        if big % self.modulus != 0 {
            return Err(Error::NotDivisible { from: self.modulus, to: big });
        }
        if big == self.modulus {
            return Ok(self.clone());
        }
        let sub = units(big)
            .into_iter()
            .filter(|&a| self.contains_residue(a % self.modulus))
            .collect();
        Ok(AbelianField { modulus: big, subgroup: sub })
    }

    fn common_modulus(&self, other: &Self) -> u64 {
        // both moduli avoid 2 mod 4, hence so does their lcm
        lcm(self.modulus, other.modulus)
    }

    /// Whether `self` contains `other` as a subfield.
    pub fn contains_field(&self, other: &Self) -> bool {
        let m = self.common_modulus(other);
        let (a, b) = (self.lift_to(m).unwrap(), other.lift_to(m).unwrap());
        a.subgroup.iter().all(|&x| b.contains_residue(x))
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// `L^+`, fixed by `<H, -1>`.
    pub fn maximal_real_subfield(&self) -> Self {
        let n = self.modulus;
        let gens = self.subgroup.iter().copied().chain([n.saturating_sub(1)]);
        AbelianField { modulus: n, subgroup: subgroup_closure(n, gens) }
    }

    pub fn galois_group(&self) -> Arc<GaloisGroup> {
        Arc::new(GaloisGroup::new(self.clone()))
    }

    /// Minimal representative of the coset `aH`.
    pub fn coset_rep(&self, a: u64) -> u64 {
        let n = self.modulus;
        self.subgroup
            .iter()
            .map(|&h| mul_mod(a % n, h, n))
            .min()
            .unwrap()
    }

    /// `sigma_l^{-1}`: the coset of `l^{-1}` on the prime-to-`l` part, as a
    /// minimal representative modulo the field's modulus.
    pub fn inverse_frobenius(&self, l: u64) -> Result<u64> {
        if !is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        let m = self.conductor();
        if m % l == 0 {
            return Err(Error::Ramified { prime: l, conductor: m });
        }
        let n = self.modulus;
        let (lk, rest) = split_prime(n, l);
        let inv = inv_mod(l as i64, rest)?;
        Ok(self.coset_rep(crt(1 % lk, lk, inv, rest)))
    }

    /// Inertia group at `l`, as sorted minimal coset representatives.
    pub fn inertia_group(&self, l: u64) -> Vec<u64> {
        let n = self.modulus;
        let (_, rest) = split_prime(n, l);
        let reps: BTreeSet<u64> = units(n)
            .into_iter()
            .filter(|&a| a % rest == 1 % rest)
            .map(|a| self.coset_rep(a))
            .collect();
        reps.into_iter().collect()
    }

    /// Decomposition group at `l`: inertia together with a Frobenius lift.
    pub fn decomposition_group(&self, l: u64) -> Vec<u64> {
        let n = self.modulus;
        let (lk, rest) = split_prime(n, l);
        let frob = crt(1 % lk, lk, l % rest, rest);
        let gens: Vec<u64> = self.inertia_group(l).into_iter().chain([frob]).collect();
        let full = subgroup_closure(n, gens.into_iter().chain(self.subgroup.iter().copied()));
        let reps: BTreeSet<u64> = full.into_iter().map(|a| self.coset_rep(a)).collect();
        reps.into_iter().collect()
    }

    /// Primes ramified in `sup` but not in `self`.
    pub fn ramified_primes_between(&self, sup: &Self) -> Result<Vec<u64>> {
        if !sup.contains_field(self) {
            return Err(Error::NotNested);
        }
        let (m, m2) = (self.conductor(), sup.conductor());
        Ok(prime_divisors(m2).into_iter().filter(|p| m % p != 0).collect())
    }

    /// Whether `x` lies in this field.
    pub fn contains_element(&self, x: &CyclotomicNumber) -> bool {
        let m = lcm(self.modulus, x.conductor());
        let m = if m % 4 == 2 { m * 2 } else { m };
        let lifted = self.lift_to(m).expect("admissible modulus");
        let x = x.lift(m).expect("conductor divides the common modulus");
        greedy_generators(&lifted.subgroup, m)
            .into_iter()
            .all(|a| x.is_fixed_by(a))
    }

    /// `N_{sup/self}(x)`, computed at the common modulus.
    pub fn norm_from(&self, sup: &Self, x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if !sup.contains_field(self) {
            return Err(Error::NotNested);
        }
        let m = lcm(lcm(self.modulus, sup.modulus), x.conductor());
        let m = if m % 4 == 2 { m * 2 } else { m };
        let (lo, hi) = (self.lift_to(m)?, sup.lift_to(m)?);
        let x = x.lift(m)?;
        let fixed = greedy_generators(&hi.subgroup, m)
            .into_iter()
            .all(|a| x.is_fixed_by(a));
        if !fixed {
            return Err(Error::NotInField(format!("element is not in {sup}")));
        }
        let y = norm_over_cosets(&x, &lo.subgroup, &hi);
        debug_assert!(greedy_generators(&lo.subgroup, m).into_iter().all(|a| y.is_fixed_by(a)));
        Ok(y)
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        self.to_string()
    }

    /// Parse `"m"` for `Q(zeta_m)`, `"m+"` for its real subfield, or the
    /// JSON encoding.
    pub fn parse_mnemonic(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        let (digits, real) = match s.strip_suffix('+') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let m: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("not a field: {s:?}")))?;
        if m == 0 {
            return Err(Error::InvalidLevel(0));
        }
        let m = arith::canonical_conductor(m);
        if real {
            Self::real_cyclotomic(m)
        } else {
            Self::cyclotomic(m)
        }
    }
}

/// Product of `sigma_a(x)` over coset representatives of `hi.subgroup` in `lo`.
pub(crate) fn norm_over_cosets(x: &CyclotomicNumber, lo: &[u64], hi: &AbelianField) -> CyclotomicNumber {
    let m = hi.modulus;
    let mut seen = BTreeSet::new();
    let mut acc = CyclotomicNumber::one(x.conductor());
    for &a in lo {
        if seen.insert(hi.coset_rep(a)) {
            acc = &acc * &x.galois_mod(a, m);
        }
    }
    acc
}

/// All subfields of `Q(zeta_n)`, one per subgroup of `(Z/n)^x`, ordered by
/// degree and then by encoding.
pub fn subfields(n: u64) -> Result<Vec<AbelianField>> {
    check_modulus(n)?;
    let all = units(n);
    let trivial = vec![1 % n];
    let mut seen: HashSet<Vec<u64>> = [trivial.clone()].into_iter().collect();
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for &g in &all {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let bigger = subgroup_closure(n, h.iter().copied().chain([g]));
            if seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    let mut out: Vec<AbelianField> = seen
        .into_iter()
        .map(|subgroup| AbelianField { modulus: n, subgroup })
        .collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(out)
}

impl fmt::Display for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonicalize();
        let n = c.modulus;
        if c.degree() == 1 {
            return write!(f, "Q");
        }
        if c.subgroup.len() == 1 {
            return write!(f, "Q(zeta_{n})");
        }
        if c.subgroup == [1, n - 1] {
            return write!(f, "Q(zeta_{n})+");
        }
        let gens: Vec<String> = greedy_generators(&c.subgroup, n)
            .into_iter()
            .map(|g| g.to_string())
            .collect();
        write!(f, "Q(zeta_{n})^<{}>", gens.join(","))
    }
}

/// `Gal(E/Q)` as the quotient `(Z/n)^x / H`, elements indexed by position in
/// the sorted list of minimal coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisGroup {
    field: AbelianField,
    reps: Vec<u64>,
    index: Vec<usize>,
}

impl GaloisGroup {
    pub fn new(field: AbelianField) -> Self {
        let n = field.modulus;
        let mut index = vec![usize::MAX; n as usize];
        let mut reps = Vec::new();
        for a in units(n) {
            if index[a as usize] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(a);
            for &h in &field.subgroup {
                index[mul_mod(a, h, n) as usize] = k;
            }
        }
        GaloisGroup { field, reps, index }
    }

    pub fn field(&self) -> &AbelianField {
        &self.field
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Minimal residue representing element `i`.
    pub fn rep(&self, i: usize) -> u64 {
        self.reps[i]
    }

    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Element containing the residue `a` (any integer prime to the modulus).
    pub fn index_of(&self, a: i64) -> Result<usize> {
        let n = self.modulus();
        let r = arith::modulo(a, n);
        match self.index[r as usize] {
            usize::MAX => Err(Error::NotCoprime { a, n }),
            k => Ok(k),
        }
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let n = self.modulus();
        self.index[mul_mod(self.reps[i], self.reps[j], n) as usize]
    }

    pub fn inv(&self, i: usize) -> usize {
        let n = self.modulus();
        self.index[inv_mod(self.reps[i] as i64, n).unwrap() as usize]
    }

    /// Complex conjugation.
    pub fn tau(&self) -> usize {
        self.index[(self.modulus() - 1) as usize % self.modulus() as usize]
    }

    /// Positions of the given residues, sorted and deduplicated.
    pub fn indices_of(&self, residues: &[u64]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = residues
            .iter()
            .map(|&a| self.index_of(a as i64))
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Check that `idx` is closed under multiplication.
    pub fn is_subgroup(&self, idx: &[usize]) -> bool {
        let set: HashSet<usize> = idx.iter().copied().collect();
        set.contains(&0) && idx.iter().all(|&a| idx.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1, |e, i| lcm(e, self.element_order(i)))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Restriction to the Galois group of a subfield.
    pub fn restrict_to(&self, i: usize, sub: &GaloisGroup) -> usize {
        let m = sub.modulus();
        let a = self.reps[i];
        let big = lcm(self.modulus(), m);
        let lifted = arith::lift_unit(a, self.modulus(), if big % 4 == 2 { big * 2 } else { big });
        sub.index[(lifted % m) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_subgroup_count(n: u64) -> usize {
        // every subset closed under multiplication containing 1
        let us = units(n);
        let k = us.len();
        let mut count = 0;
        for mask in 0u64..(1 << k) {
            let set: Vec<u64> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| us[i]).collect();
            if !set.contains(&(1 % n)) {
                continue;
            }
            let closed = set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&mul_mod(a, b, n))));
            if closed {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn subfield_counts() {
        assert_eq!(subfields(4).unwrap().len(), 2);
        assert_eq!(subfields(8).unwrap().len(), brute_subgroup_count(8));
        assert_eq!(brute_subgroup_count(8), 5);
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(subfields(p).unwrap().len(), divisors(p - 1).len());
        }
        for n in [12u64, 15, 16, 20, 21, 24, 28] {
            assert_eq!(subfields(n).unwrap().len(), brute_subgroup_count(n), "n={n}");
        }
        assert!(subfields(6).is_err());
    }

    #[test]
    fn conductors() {
        let q12 = AbelianField::from_generators(12, &[5, 7]).unwrap();
        assert_eq!(q12.conductor(), 1);
        let q4 = AbelianField::cyclotomic_at(4, 12).unwrap();
        assert_eq!(q4.conductor(), 4);
        assert_eq!(q4.canonicalize(), AbelianField::cyclotomic(4).unwrap());
        assert_eq!(AbelianField::real_cyclotomic(9).unwrap().conductor(), 9);
        // Q(sqrt(-3)) = Q(zeta_3) inside Q(zeta_12)
        let q3 = AbelianField::cyclotomic_at(3, 12).unwrap();
        assert_eq!(q3.conductor(), 3);
    }

    #[test]
    fn frobenius() {
        let q = AbelianField::rationals();
        assert_eq!(q.inverse_frobenius(7).unwrap(), 0);
        let q5 = AbelianField::cyclotomic(5).unwrap();
        assert_eq!(q5.inverse_frobenius(2).unwrap(), 3);
        let q15p = AbelianField::real_cyclotomic(15).unwrap();
        assert_eq!(q15p.inverse_frobenius(2).unwrap(), q15p.coset_rep(8));
        assert_eq!(q15p.coset_rep(8), 7);
        assert!(q5.inverse_frobenius(5).is_err());
    }

    #[test]
    fn decomposition_and_inertia() {
        let q15 = AbelianField::cyclotomic(15).unwrap();
        assert_eq!(q15.decomposition_group(2), vec![1, 2, 4, 8]);
        assert_eq!(q15.inertia_group(2), vec![1]);
        let q9 = AbelianField::cyclotomic(9).unwrap();
        assert_eq!(q9.decomposition_group(3).len(), 6);
        assert_eq!(q9.inertia_group(3).len(), 6);
        let q = AbelianField::rationals();
        assert_eq!(q.decomposition_group(5), vec![0]);
    }

    #[test]
    fn real_subfields() {
        let q5 = AbelianField::cyclotomic(5).unwrap();
        assert_eq!(q5.maximal_real_subfield().degree(), 2);
        let sqrt_m3 = AbelianField::cyclotomic(3).unwrap();
        assert!(sqrt_m3.maximal_real_subfield().same_field(&AbelianField::rationals()));
        let q8p = AbelianField::real_cyclotomic(8).unwrap();
        assert_eq!(q8p.maximal_real_subfield(), q8p);
    }

    #[test]
    fn norms() {
        let q = AbelianField::rationals();
        let q5 = AbelianField::cyclotomic(5).unwrap();
        let n = q.norm_from(&q5, &CyclotomicNumber::one_minus_zeta(5, 1)).unwrap();
        assert_eq!(n.as_rational().unwrap(), crate::rational::int(5));
        let q15 = AbelianField::cyclotomic(15).unwrap();
        let n = q.norm_from(&q15, &CyclotomicNumber::one_minus_zeta(15, 1)).unwrap();
        assert!(n.is_one());

        // N_{Q(zeta_12)/Q(zeta_4)}(1 - zeta_12) = (1 - zeta_4)^(1 - sigma_3^{-1})
        let q4 = AbelianField::cyclotomic(4).unwrap();
        let q12 = AbelianField::cyclotomic(12).unwrap();
        let lhs = q4.norm_from(&q12, &CyclotomicNumber::one_minus_zeta(12, 1)).unwrap();
        let c4 = CyclotomicNumber::one_minus_zeta(4, 1);
        let s = q4.inverse_frobenius(3).unwrap() as i64;
        let rhs = c4.checked_div(&c4.galois(s).unwrap()).unwrap();
        assert_eq!(lhs, rhs);

        assert!(q.norm_from(&q5, &CyclotomicNumber::zeta(3)).is_err());
        assert_eq!(q5.norm_from(&q4, &CyclotomicNumber::zeta(4)), Err(Error::NotNested));
    }

    #[test]
    fn ramified_primes() {
        let q4 = AbelianField::cyclotomic(4).unwrap();
        let q12 = AbelianField::cyclotomic(12).unwrap();
        assert_eq!(q4.ramified_primes_between(&q12).unwrap(), vec![3]);
        let q5 = AbelianField::cyclotomic(5).unwrap();
        assert_eq!(q5.ramified_primes_between(&q5).unwrap(), Vec::<u64>::new());
        let q45 = AbelianField::cyclotomic(45).unwrap();
        assert_eq!(AbelianField::rationals().ramified_primes_between(&q45).unwrap(), vec![3, 5]);
        assert!(q12.ramified_primes_between(&q4).is_err());
    }

    #[test]
    fn galois_group_structure() {
        let g = AbelianField::real_cyclotomic(15).unwrap().galois_group();
        assert_eq!(g.order(), 4);
        assert_eq!(g.reps(), &[1, 2, 4, 7]);
        assert_eq!(g.tau(), 0);
        assert_eq!(g.exponent(), 4);
        let g5 = AbelianField::cyclotomic(5).unwrap().galois_group();
        assert_eq!(g5.exponent(), 4);
        let sub = AbelianField::real_cyclotomic(5).unwrap().galois_group();
        assert_eq!(g5.restrict_to(g5.index_of(4).unwrap(), &sub), 0);
    }

    #[test]
    fn mnemonics_and_json() {
        assert_eq!(AbelianField::parse_mnemonic("15+").unwrap(), AbelianField::real_cyclotomic(15).unwrap());
        assert_eq!(AbelianField::parse_mnemonic("10").unwrap(), AbelianField::cyclotomic(5).unwrap());
        let f = AbelianField::parse_mnemonic(r#"{"modulus": 8, "subgroup": [1, 7]}"#).unwrap();
        assert_eq!(f, AbelianField::real_cyclotomic(8).unwrap());
        assert!(AbelianField::parse_mnemonic(r#"{"modulus": 8, "subgroup": [1, 3, 5]}"#).is_err());
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"modulus":8,"subgroup":[1,7]}"#);
    }
}
