//! Membership in the Q-span of the Galois orbit of `c_L^{1+tau}`, decided
//! numerically and certified either exactly or by intervals.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::linalg::{Echelon, Reduction};
use super::logvec::{log_embedding, place_group, LogVector};
use crate::arith::lcm;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::euler::cyclotomic_component;
use crate::fields::{AbelianField, GaloisGroup};
use crate::group_ring::{annihilator_ideal, IntElement, RatElement};
use crate::interval::Interval;
use crate::rational::{best_approximation, common_denominator, format_rational};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const MAX_PRECISION_BITS: u32 = 4096;

#[derive(Clone, Debug)]
pub struct MembershipOptions {
    pub start_bits: u32,
    pub max_bits: u32,
    /// Bound on reconstructed denominators.
    pub denominator_bound: BigInt,
    /// Largest total exponent tried in the exact confirmation.
    pub exponent_budget: u64,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        MembershipOptions {
            start_bits: DEFAULT_PRECISION_BITS,
            max_bits: MAX_PRECISION_BITS,
            denominator_bound: BigInt::one() << 32u32,
            exponent_budget: 1 << 16,
        }
    }
}

impl MembershipOptions {
    pub fn at(bits: u32) -> Self {
        MembershipOptions { start_bits: bits, max_bits: bits.max(MAX_PRECISION_BITS), ..Default::default() }
    }
}

/// `L^+` with the orbit generator `y = c_L^{1+tau}` and its annihilator.
#[derive(Clone, Debug)]
pub struct PlusContext {
    pub field: AbelianField,
    pub group: Arc<GaloisGroup>,
    pub generator: CyclotomicNumber,
    pub annihilator: Vec<IntElement>,
}

impl PlusContext {
    pub fn new(l: &AbelianField) -> Self {
        let field = l.canonicalize();
        let c = cyclotomic_component(&field);
        let generator = &c * &c.conj();
        let group = place_group(&field);
        let annihilator = annihilator_ideal(&field);
        debug_assert!(annihilator.iter().all(|r| r.group().field() == group.field()));
        PlusContext { field, group, generator, annihilator }
    }

    /// Dimension of the Q-span of the orbit.
    pub fn rank(&self) -> usize {
        self.group.order() - self.annihilator.len()
    }

    pub fn plus_field(&self) -> &AbelianField {
        self.group.field()
    }

    pub fn log_vector(&self, x: &CyclotomicNumber, bits: u32) -> Result<LogVector> {
        log_embedding(x, self.group.field(), bits)
    }

    /// Row `g`: coordinates of `sigma_g(y)`.
    pub fn orbit_rows(&self, bits: u32) -> Result<Vec<Vec<Interval>>> {
        let v = self.log_vector(&self.generator, bits)?;
        let prec = v.entries[0].precision();
        Ok((0..self.group.order())
            .map(|g| {
                let mut row = v.permuted(g);
                if let Some((_, val)) = v.valuation {
                    row.push(Interval::from_int(val, prec));
                }
                row
            })
            .collect())
    }

    /// `y^r` for an integral `r` over `Gal(L^+/Q)`.
    pub fn power(&self, r: &IntElement) -> Result<CyclotomicNumber> {
        r.apply_unchecked(&self.generator)
    }

    /// Whether `q` is a root of unity in `Q(zeta_m)`.
    pub fn is_torsion(&self, q: &CyclotomicNumber) -> Result<bool> {
        let w = lcm(2, self.field.modulus().max(1)) as i64;
        Ok(q.pow(w)?.is_one())
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// `x^denominator = zeta * y^(denominator * coefficients)` was checked
    /// exactly, `zeta` a root of unity.
    Exact { denominator: BigInt },
    /// A residual coordinate of `x` against the orbit span is nonzero.
    Interval { column: usize, lower: BigRational, upper: BigRational },
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub coefficients: Option<RatElement>,
    pub certificate: Certificate,
    pub precision_bits: u32,
}

impl Membership {
    pub fn to_json(&self) -> Value {
        let cert = match &self.certificate {
            Certificate::Exact { denominator } => json!({"kind": "exact", "denominator": denominator.to_string()}),
            Certificate::Interval { column, lower, upper } => json!({
                "kind": "interval",
                "column": column,
                "lower": format_rational(lower),
                "upper": format_rational(upper),
            }),
        };
        json!({
            "member": self.member,
            "coefficients": self.coefficients.as_ref().map(RatElement::to_json),
            "certificate": cert,
            "precision_bits": self.precision_bits,
        })
    }
}

pub fn qspan_membership(x: &CyclotomicNumber, l: &AbelianField) -> Result<Membership> {
    qspan_membership_with(&PlusContext::new(l), x, &MembershipOptions::default())
}

/// Decide whether the log vector of `x` lies in the Q-span of the orbit of
/// `c_L^{1+tau}`, doubling the precision until a certificate is found.
pub fn qspan_membership_with(ctx: &PlusContext, x: &CyclotomicNumber, opts: &MembershipOptions) -> Result<Membership> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !ctx.plus_field().contains_element(x) {
        return Err(Error::NotInField(format!("{x} is not in {}", ctx.plus_field())));
    }
    let mut bits = opts.start_bits;
    loop {
        if let Some(m) = attempt(ctx, x, bits, opts)? {
            return Ok(m);
        }
        if bits >= opts.max_bits {
            return Err(Error::Undecided { bits });
        }
        bits = (bits * 2).min(opts.max_bits);
    }
}

fn attempt(ctx: &PlusContext, x: &CyclotomicNumber, bits: u32, opts: &MembershipOptions) -> Result<Option<Membership>> {
    let rows = match ctx.orbit_rows(bits) {
        Ok(r) => r,
        Err(Error::PrecisionExhausted { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let prec = rows[0][0].precision();
    let Some(ech) = Echelon::build(&rows, ctx.rank(), prec)? else {
        return Ok(None);
    };
    let b = match ctx.log_vector(x, bits) {
        Ok(v) => v.coordinates(),
        Err(Error::PrecisionExhausted { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let coeffs = match ech.reduce(&b) {
        Err(Error::PrecisionExhausted { .. }) => return Ok(None),
        Err(e) => return Err(e),
        Ok(Reduction::Outside { column, residual }) => {
            return Ok(Some(Membership {
                member: false,
                coefficients: None,
                certificate: Certificate::Interval { column, lower: residual.lower(), upper: residual.upper() },
                precision_bits: bits,
            }))
        }
        Ok(Reduction::InSpan(c)) => c,
    };
    let n = ctx.group.order();
    let mut r = vec![BigRational::zero(); n];
    for (c, &row) in coeffs.iter().zip(&ech.rows) {
        let q = best_approximation(&c.midpoint(), &opts.denominator_bound);
        if !c.contains(&q) {
            return Ok(None);
        }
        r[row] = q;
    }
    let den = common_denominator(r.iter());
    let scaled: Vec<BigInt> = r.iter().map(|q| (q * &den).to_integer()).collect();
    let total = scaled.iter().fold(den.clone(), |a, v| a + v.abs());
    if total > BigInt::from(opts.exponent_budget) {
        return Ok(None);
    }
    let d = den.to_i64().expect("within budget");
    let lhs = x.pow(d)?;
    let rhs = ctx.power(&IntElement::new(Arc::clone(&ctx.group), scaled)?)?;
    if !ctx.is_torsion(&lhs.checked_div(&rhs)?)? {
        return Ok(None);
    }
    Ok(Some(Membership {
        member: true,
        coefficients: Some(RatElement::new(Arc::clone(&ctx.group), r)?),
        certificate: Certificate::Exact { denominator: den },
        precision_bits: bits,
    }))
}
