//! Splitting a finite-level system into a Coleman sign pattern times a
//! group-ring multiple of the cyclotomic system.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::membership::{qspan_membership_with, MembershipOptions, PlusContext};
use crate::arith::{lcm, prime_divisors};
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::euler::{coleman_pattern, cyclotomic_system, verify_distribution, FiniteEulerSystem};
use crate::fields::AbelianField;
use crate::group_ring::IntElement;
use crate::json::to_canonical_string;
use crate::lattice::{integer_kernel, solve_integer_left, Matrix};

/// `u = t * c^r` with `t` a product of Coleman sign patterns.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub level: u64,
    /// Over `Gal(Q(zeta_N)/Q)`.
    pub r: IntElement,
    /// Prime sets whose sign patterns multiply to `t`.
    pub pattern: Vec<BTreeSet<u64>>,
    pub certificate: Value,
}

#[derive(Clone, Debug)]
pub enum DecomposeOutcome {
    Found(Decomposition),
    /// The first obstruction met.
    NotFound(String),
}

fn sha256_hex(v: &Value) -> String {
    hex::encode(Sha256::digest(to_canonical_string(v).as_bytes()))
}

/// The system `t * c^r` for a pattern and a group-ring element.
pub fn compose(level: u64, pattern: &[BTreeSet<u64>], r: &IntElement) -> Result<FiniteEulerSystem> {
    let mut sys = cyclotomic_system(level)?.act(r)?;
    for s in pattern {
        sys = sys.mul(&coleman_pattern(s, level)?)?;
    }
    Ok(sys)
}

impl Decomposition {
    pub fn recompose(&self) -> Result<FiniteEulerSystem> {
        compose(self.level, &self.pattern, &self.r)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "r": self.r.to_json(),
            "pattern": self.pattern.iter().map(|s| s.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>(),
            "certificate": self.certificate,
        })
    }
}

/// Integer matrix (`n` rows) whose columns span the functionals vanishing
/// on `basis`; with an empty basis this is the identity.
fn vanishing_functionals(basis: &[IntElement], n: usize) -> Matrix {
    if basis.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    }
    let bt: Matrix = (0..n).map(|i| basis.iter().map(|b| b.coeffs()[i].clone()).collect()).collect();
    let kt = integer_kernel(&bt);
    (0..n).map(|i| kt.iter().map(|row| row[i].clone()).collect()).collect()
}

/// All prime sets `S` drawn from the odd primes dividing the level,
/// including the empty set.
fn pattern_sets(level: u64) -> Vec<BTreeSet<u64>> {
    let odd: Vec<u64> = prime_divisors(level).into_iter().filter(|&p| p != 2).collect();
    (0u32..1 << odd.len())
        .map(|mask| odd.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect())
        .collect()
}

pub fn decompose(u: &FiniteEulerSystem) -> Result<DecomposeOutcome> {
    decompose_with(u, &MembershipOptions::default())
}

pub fn decompose_with(u: &FiniteEulerSystem, opts: &MembershipOptions) -> Result<DecomposeOutcome> {
    use DecomposeOutcome::NotFound;
    if u.restricted_to().is_some() {
        return Err(Error::InvalidArgument("decompose needs a system over the full level".into()));
    }
    let level = u.level();
    let report = verify_distribution(u)?;
    if !report.passed() {
        return Ok(NotFound(format!("{} distribution relations fail", report.violations.len())));
    }
    let top = AbelianField::cyclotomic(level)?;
    let full = top.galois_group();
    let n = full.order();

    // r is pinned down modulo I_E at every field E at once: columns of `m`
    // are functionals vanishing on I_E, pulled back to Gal(Q(zeta_N)/Q)
    let mut m: Matrix = vec![Vec::new(); n];
    let mut b: Vec<BigRational> = Vec::new();
    let mut top_membership = None;
    for (e, val) in u.components() {
        if e.conductor() == 1 {
            continue;
        }
        let ctx = PlusContext::new(e);
        let mem = qspan_membership_with(&ctx, &(val * &val.conj()), opts)?;
        let Some(a) = mem.coefficients.as_ref().filter(|_| mem.member) else {
            return Ok(NotFound(format!("plus part of the component at {e} is outside the span of the cyclotomic orbit")));
        };
        let k = vanishing_functionals(&ctx.annihilator, ctx.group.order());
        for (i, row) in m.iter_mut().enumerate() {
            let j = full.restrict_to(i, &ctx.group);
            row.extend(k[j].iter().cloned());
        }
        for col in 0..k.first().map_or(0, Vec::len) {
            b.push(a.coeffs().iter().zip(&k).fold(BigRational::zero(), |acc, (q, row)| acc + q * BigRational::from_integer(row[col].clone())));
        }
        if e == &top {
            top_membership = Some(mem.to_json());
        }
    }
    if !b.iter().all(BigRational::is_integer) {
        return Ok(NotFound("no integral group-ring element matches the plus parts".into()));
    }
    let b: Vec<BigInt> = b.iter().map(BigRational::to_integer).collect();
    let Some(x0) = solve_integer_left(&m, &b) else {
        return Ok(NotFound("no integral group-ring element matches the plus parts".into()));
    };
    let r0 = IntElement::new(Arc::clone(&full), x0)?;
    let c = cyclotomic_system(level)?;
    let Some(target) = torsion_exponents(&u.mul(&c.act(&r0)?.inverse()?)?) else {
        return Ok(NotFound("residual is not a root of unity at every field".into()));
    };

    // what is left is torsion: a lattice problem over the roots of unity,
    // generated by sign patterns and by c^s for s in the kernel of `m`
    let sets = pattern_sets(level);
    let mut pattern_rows = Vec::with_capacity(sets.len());
    for s in &sets {
        pattern_rows.push(torsion_exponents(&coleman_pattern(s, level)?).ok_or(Error::NotRational)?);
    }
    let kernel: Vec<IntElement> = integer_kernel(&m)
        .into_iter()
        .map(|v| IntElement::new(Arc::clone(&full), v))
        .collect::<Result<_>>()?;
    let mut kernel_rows = Vec::with_capacity(kernel.len());
    for s in &kernel {
        let Some(e) = torsion_exponents(&c.act(s)?) else {
            return Ok(NotFound("kernel element does not give a torsion system".into()));
        };
        kernel_rows.push(e);
    }
    let orders: Vec<BigInt> = u.fields().map(|f| BigInt::from(lcm(2, f.conductor()))).collect();
    let moduli: Matrix = (0..orders.len())
        .map(|i| (0..orders.len()).map(|j| if i == j { orders[i].clone() } else { BigInt::zero() }).collect())
        .collect();
    // sign patterns alone are tried first so pure torsion keeps r small
    let solve = |with_kernel: bool| {
        let mut rows = pattern_rows.clone();
        if with_kernel {
            rows.extend(kernel_rows.iter().cloned());
        }
        rows.extend(moduli.iter().cloned());
        solve_integer_left(&rows, &target)
    };
    let Some(sol) = solve(false).or_else(|| solve(true)) else {
        return Ok(NotFound("torsion residual is outside the span of the Coleman patterns and c^s".into()));
    };
    let mut r = r0;
    if sol.len() == sets.len() + kernel.len() + orders.len() {
        for ((s, e), x) in kernel.iter().zip(&kernel_rows).zip(&sol[sets.len()..]) {
            // c^s is torsion, so only x modulo its order matters
            let ord = torsion_order(e, &orders);
            let mut x = x.mod_floor(&ord);
            if &x + &x > ord {
                x -= &ord;
            }
            if !x.is_zero() {
                r = r.add(&s.scale(&x))?;
            }
        }
    }
    let pattern: Vec<BTreeSet<u64>> =
        sets.iter().zip(&sol).filter(|(_, x)| x.is_odd()).map(|(s, _)| s.clone()).collect();

    let recomposed = compose(level, &pattern, &r)?;
    let mut fields = Vec::new();
    for (f, val) in u.components() {
        let back = recomposed.get(f).ok_or_else(|| Error::MissingComponent(f.to_string()))?;
        if back != val {
            return Ok(NotFound(format!("recomposition differs from the input at {f}")));
        }
        fields.push(json!({
            "field": f.to_string(),
            "sha256": sha256_hex(&serde_json::to_value(back).expect("serializable")),
            "equal": true,
        }));
    }
    let certificate = json!({
        "input_sha256": sha256_hex(&u.to_json()),
        "level": level,
        "r": r.to_json(),
        "pattern": pattern.iter().map(|s| s.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>(),
        "membership": top_membership,
        "fields": fields,
    });
    Ok(DecomposeOutcome::Found(Decomposition { level, r, pattern, certificate }))
}

/// Order of a torsion system given by its exponent vector.
fn torsion_order(exps: &[BigInt], orders: &[BigInt]) -> BigInt {
    exps.iter().zip(orders).fold(BigInt::from(1), |acc, (e, n)| acc.lcm(&(n / e.gcd(n))))
}

/// Exponent of each component as a power of `-zeta_m`, which generates the
/// roots of unity in `Q(zeta_m)` (order `lcm(2, m)`).
fn torsion_exponents(sys: &FiniteEulerSystem) -> Option<Vec<BigInt>> {
    sys.components()
        .iter()
        .map(|(f, v)| {
            let m = f.conductor();
            let gen = -CyclotomicNumber::zeta(m);
            let v = v.descend(m).ok()?;
            let mut p = CyclotomicNumber::one(m);
            for k in 0..lcm(2, m) {
                if p == v {
                    return Some(BigInt::from(k));
                }
                p = &p * &gen;
            }
            None
        })
        .collect()
}
