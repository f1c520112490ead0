//! Group rings of Galois groups of abelian fields, with integer, rational or
//! cyclotomic scalars.

mod character;
mod idempotents;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::fields::{AbelianField, GaloisGroup};
use crate::rational::{format_rational, parse_rational};

pub use character::{characters, Character};
pub use idempotents::{
    annihilator_ideal, char_kills_el, el_predicate, epsilon, idempotent_char, idempotent_el,
    idempotent_subgroup,
};

/// Coefficient ring of a group ring.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Short form used when printing group-ring elements.
    fn show(&self) -> String {
        format!("{self:?}")
    }
}

impl Scalar for BigInt {
    fn show(&self) -> String {
        self.to_string()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
}

impl Scalar for BigRational {
    fn show(&self) -> String {
        self.to_string()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
}

impl Scalar for CyclotomicNumber {
    fn show(&self) -> String {
        self.to_string()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.conductor())
    }
}

/// `sum_i coeffs[i] * g_i` over the elements of a Galois group, stored densely
/// in the group's element order.
#[derive(Clone)]
pub struct GroupRingElement<S: Scalar> {
    pub(crate) group: Arc<GaloisGroup>,
    pub(crate) coeffs: Vec<S>,
}

pub type IntElement = GroupRingElement<BigInt>;
pub type RatElement = GroupRingElement<BigRational>;
pub type CycElement = GroupRingElement<CyclotomicNumber>;

impl<S: Scalar> GroupRingElement<S> {
    pub fn new(group: Arc<GaloisGroup>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                group.order(),
                coeffs.len()
            )));
        }
        Ok(GroupRingElement { group, coeffs })
    }

    pub fn zero_with(group: Arc<GaloisGroup>, zero: S) -> Self {
        let coeffs = vec![zero.zero_like(); group.order()];
        GroupRingElement { group, coeffs }
    }

    /// The basis element `g_i`.
    pub fn basis_with(group: Arc<GaloisGroup>, i: usize, zero: S) -> Self {
        let mut e = Self::zero_with(group, zero.clone());
        e.coeffs[i] = zero.one_like();
        e
    }

    pub fn one_with(group: Arc<GaloisGroup>, zero: S) -> Self {
        Self::basis_with(group, 0, zero)
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn field(&self) -> &AbelianField {
        self.group.field()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &S {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    fn check_group(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &o.group) || self.group.field() == o.group.field() {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_group(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(GroupRingElement { group: Arc::clone(&self.group), coeffs })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_group(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect();
        Ok(GroupRingElement { group: Arc::clone(&self.group), coeffs })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_group(o)?;
        let g = &self.group;
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; g.order()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = g.mul(i, j);
                out[k] = out[k].add(&a.mul(b));
            }
        }
        Ok(GroupRingElement { group: Arc::clone(g), coeffs: out })
    }

    pub fn scale(&self, s: &S) -> Self {
        GroupRingElement {
            group: Arc::clone(&self.group),
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let zero = self.coeffs[0].zero_like();
        GroupRingElement {
            group: Arc::clone(&self.group),
            coeffs: self.coeffs.iter().map(|c| zero.sub(c)).collect(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GroupRingElement<T> {
        GroupRingElement { group: Arc::clone(&self.group), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<GroupRingElement<T>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<_>>()?;
        Ok(GroupRingElement { group: Arc::clone(&self.group), coeffs })
    }

    /// Image under restriction of group elements to the Galois group of a
    /// subfield (for instance the projection to the plus part).
    pub fn restrict(&self, sub: &Arc<GaloisGroup>) -> Result<Self> {
        if !self.field().contains_field(sub.field()) {
            return Err(Error::NotNested);
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; sub.order()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.group.restrict_to(i, sub);
            out[k] = out[k].add(c);
        }
        Ok(GroupRingElement { group: Arc::clone(sub), coeffs: out })
    }

    /// Apply complex conjugation to the group variable: `sum c_g g tau`.
    pub fn times_tau(&self) -> Self {
        let t = self.group.tau();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[self.group.mul(i, t)] = c.clone();
        }
        GroupRingElement { group: Arc::clone(&self.group), coeffs: out }
    }
}

impl<S: Scalar> PartialEq for GroupRingElement<S> {
    fn eq(&self, o: &Self) -> bool {
        self.group.field() == o.group.field() && self.coeffs == o.coeffs
    }
}

impl<S: Scalar> fmt::Debug for GroupRingElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| format!("({})*s{}", self.coeffs[i].show(), self.group.rep(i)))
            .collect();
        write!(f, "[{}] {}", self.field(), if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }
}

impl IntElement {
    pub fn zero(group: Arc<GaloisGroup>) -> Self {
        Self::zero_with(group, BigInt::zero())
    }

    pub fn one(group: Arc<GaloisGroup>) -> Self {
        Self::one_with(group, BigInt::zero())
    }

    pub fn basis(group: Arc<GaloisGroup>, i: usize) -> Self {
        Self::basis_with(group, i, BigInt::zero())
    }

    pub fn from_ints(group: Arc<GaloisGroup>, coeffs: &[i64]) -> Result<Self> {
        Self::new(group, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatElement {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// `1 + tau`.
    pub fn one_plus_tau(group: Arc<GaloisGroup>) -> Self {
        let mut e = Self::one(Arc::clone(&group));
        let t = group.tau();
        e.coeffs[t] += 1;
        e
    }

    /// Multiplicative action on a field element: `prod_g g(u)^{c_g}`.
    pub fn apply(&self, u: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.field().contains_element(u) {
            return Err(Error::NotInField(format!("{u} is not in {}", self.field())));
        }
        self.apply_unchecked(u)
    }

    pub(crate) fn apply_unchecked(&self, u: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        let n = self.group.modulus();
        let c = u.conductor();
        let mut num = CyclotomicNumber::one(c);
        let mut den = CyclotomicNumber::one(c);
        for (i, e) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(e) {
                continue;
            }
            let conj = u.galois_mod(self.group.rep(i), n);
            let k: i64 = e.try_into().map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
            let p = conj.pow(k.abs())?;
            if k > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        if den.is_one() {
            Ok(num)
        } else {
            num.checked_div(&den)
        }
    }
}

impl RatElement {
    pub fn zero(group: Arc<GaloisGroup>) -> Self {
        Self::zero_with(group, BigRational::zero())
    }

    pub fn one(group: Arc<GaloisGroup>) -> Self {
        Self::one_with(group, BigRational::zero())
    }

    pub fn to_integer(&self) -> Result<IntElement> {
        self.try_map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NotIntegral)
            }
        })
    }

    /// Lift to cyclotomic scalars in `Q(zeta_k)`.
    pub fn to_cyclotomic(&self, k: u64) -> CycElement {
        self.map(|c| CyclotomicNumber::from_rational(k, c))
    }
}

impl CycElement {
    pub fn to_rational(&self) -> Result<RatElement> {
        self.try_map(|c| c.as_rational().ok_or(Error::NotRational))
    }
}

/// Scalar domains that have a JSON text form.
pub trait JsonScalar: Scalar {
    const TAG: &'static str;
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> Result<Self>;
}

impl JsonScalar for BigInt {
    const TAG: &'static str = "int";
    fn to_text(&self) -> String {
        format!("{self}/1")
    }
    fn from_text(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::NotIntegral)
        }
    }
}

impl JsonScalar for BigRational {
    const TAG: &'static str = "rat";
    fn to_text(&self) -> String {
        format_rational(self)
    }
    fn from_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

impl<S: JsonScalar> GroupRingElement<S> {
    /// `{"field", "scalars", "terms": [{"coset", "coeff"}]}`, zero terms omitted.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .support()
            .into_iter()
            .map(|i| json!({"coset": self.group.rep(i), "coeff": self.coeffs[i].to_text()}))
            .collect();
        json!({"field": self.field(), "scalars": S::TAG, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("group ring element: {what}"));
        let field: AbelianField =
            serde_json::from_value(v.get("field").cloned().ok_or_else(|| bad("missing field"))?)
                .map_err(|e| Error::Parse(e.to_string()))?;
        let tag = v.get("scalars").and_then(Value::as_str).ok_or_else(|| bad("missing scalars"))?;
        if tag != S::TAG {
            return Err(bad(&format!("expected {} scalars, found {tag}", S::TAG)));
        }
        let group = field.galois_group();
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let zero = S::from_text("0")?;
        let mut out = Self::zero_with(Arc::clone(&group), zero);
        for t in terms {
            let coset = t.get("coset").and_then(Value::as_u64).ok_or_else(|| bad("bad coset"))?;
            let coeff = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("bad coeff"))?;
            let i = group.index_of(coset as i64)?;
            out.coeffs[i] = out.coeffs[i].add(&S::from_text(coeff)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn apply_examples() {
        let g = AbelianField::cyclotomic(5).unwrap().galois_group();
        let u = CyclotomicNumber::one_minus_zeta(5, 1);
        assert_eq!(IntElement::one(Arc::clone(&g)).apply(&u).unwrap(), u);
        let z = CyclotomicNumber::zeta(5);
        assert!(IntElement::one_plus_tau(Arc::clone(&g)).apply(&z).unwrap().is_one());
        let norm = IntElement::from_ints(Arc::clone(&g), &[1, 1, 1, 1]).unwrap();
        assert_eq!(norm.apply(&u).unwrap().as_rational(), Some(int(5)));
        assert_eq!(norm.apply(&CyclotomicNumber::zero(5)), Err(Error::DivisionByZero));
    }

    #[test]
    fn apply_is_an_action() {
        let g = AbelianField::cyclotomic(7).unwrap().galois_group();
        let r = IntElement::from_ints(Arc::clone(&g), &[2, -1, 0, 1, 0, -2]).unwrap();
        let s = IntElement::from_ints(Arc::clone(&g), &[0, 1, -1, 0, 3, 0]).unwrap();
        let u = CyclotomicNumber::one_minus_zeta(7, 1);
        let lhs = r.mul(&s).unwrap().apply(&u).unwrap();
        let rhs = r.apply(&s.apply(&u).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_roundtrip() {
        let g = AbelianField::real_cyclotomic(15).unwrap().galois_group();
        let r = IntElement::from_ints(Arc::clone(&g), &[1, 0, -3, 2]).unwrap();
        let v = r.to_json();
        assert_eq!(v["scalars"], "int");
        assert_eq!(v["terms"][1]["coeff"], "-3/1");
        assert_eq!(IntElement::from_json(&v).unwrap(), r);
        assert!(RatElement::from_json(&v).is_err());
    }
}
