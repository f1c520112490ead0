use std::fmt;
use std::sync::Arc;

use crate::arith::{gcd, units};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::fields::{AbelianField, GaloisGroup};

/// A character of a Galois group with values in the `k`-th roots of unity,
/// `k` the group exponent. `exps[i]` is the exponent of `zeta_k` at element `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    group: Arc<GaloisGroup>,
    order: u64,
    generators: Vec<usize>,
    exps: Vec<u64>,
}

impl Character {
    /// Build from values on a full table and check multiplicativity.
    pub fn from_table(group: Arc<GaloisGroup>, k: u64, exps: Vec<u64>) -> Result<Self> {
        if exps.len() != group.order() {
            return Err(Error::InvalidArgument("character table has the wrong length".into()));
        }
        let n = group.order();
        for i in 0..n {
            for j in 0..n {
                if (exps[i] + exps[j]) % k != exps[group.mul(i, j)] % k {
                    return Err(Error::InvalidArgument("table is not multiplicative".into()));
                }
            }
        }
        let exps = exps.into_iter().map(|e| e % k).collect();
        Ok(Character { group, order: k, generators: Vec::new(), exps })
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    /// The `k` with values in `mu_k`.
    pub fn value_order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Exponent `e` with `chi(g_i) = zeta_k^e`.
    pub fn exponent_at(&self, i: usize) -> u64 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn value(&self, i: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(self.order, self.exps[i] as i64)
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u64 {
        let g = self.exps.iter().fold(self.order, |g, &e| gcd(g, e));
        self.order / g
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] == 0).collect()
    }

    pub fn is_trivial_on(&self, idx: &[usize]) -> bool {
        idx.iter().all(|&i| self.exps[i] == 0)
    }

    pub fn conj(&self) -> Self {
        let k = self.order;
        Character {
            group: Arc::clone(&self.group),
            order: k,
            generators: self.generators.clone(),
            exps: self.exps.iter().map(|&e| (k - e) % k).collect(),
        }
    }

    /// `F_psi`, the subfield fixed by the kernel.
    pub fn fixed_field(&self) -> AbelianField {
        let f = self.group.field();
        let n = f.modulus();
        let sub: Vec<u64> = units(n)
            .into_iter()
            .filter(|&a| self.exps[self.group.index_of(a as i64).unwrap()] == 0)
            .collect();
        AbelianField::new(n, sub).expect("kernel preimage is a subgroup")
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .map(|(i, e)| format!("s{}->z{}^{}", self.group.rep(i), self.order, e))
            .collect();
        write!(f, "chi[{}]", vals.join(", "))
    }
}

/// All characters of `group`, trivial character first, built by extending
/// along a greedy chain of generators.
pub fn characters(group: &Arc<GaloisGroup>) -> Vec<Character> {
    let n = group.order();
    let k = group.exponent();
    // (member flags, list of tables defined on the members)
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut tables: Vec<Vec<u64>> = vec![vec![0; n]];
    let mut gens = Vec::new();
    for g in 0..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        // smallest r with g^r in the current subgroup
        let mut r = 1u64;
        let mut gr = g;
        while !inside[gr] {
            gr = group.mul(gr, g);
            r += 1;
        }
        let mut new_members = Vec::with_capacity(members.len() * r as usize);
        let mut powers = vec![0usize];
        for _ in 1..r {
            powers.push(group.mul(*powers.last().unwrap(), g));
        }
        for &p in &powers {
            for &s in &members {
                new_members.push((s, p));
            }
        }
        let mut next_tables = Vec::with_capacity(tables.len() * r as usize);
        for t in &tables {
            let c = t[gr];
            debug_assert_eq!(c % r, 0);
            for step in 0..r {
                let e = (c / r + step * (k / r)) % k;
                let mut nt = t.clone();
                for (j, &p) in powers.iter().enumerate() {
                    for &s in &members {
                        let idx = group.mul(s, p);
                        nt[idx] = (t[s] + j as u64 * e) % k;
                    }
                }
                next_tables.push(nt);
            }
        }
        tables = next_tables;
        members = new_members.iter().map(|&(s, p)| group.mul(s, p)).collect();
        for &m in &members {
            inside[m] = true;
        }
    }
    tables
        .into_iter()
        .map(|exps| {
            let ch = Character::from_table(Arc::clone(group), k, exps).expect("extension is multiplicative");
            Character { generators: gens.clone(), ..ch }
        })
        .collect()
}
