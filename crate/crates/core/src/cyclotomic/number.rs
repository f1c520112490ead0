use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic_polynomial, mul_reduced, reduce_in_place, QPoly};
use crate::arith::{self, divisors, euler_phi, gcd, lcm};
use crate::error::{Error, Result};

/// An element of `Q(zeta_n)` in the power basis `1, zeta_n, ..., zeta_n^(phi(n)-1)`.
///
/// Coefficients are kept as integer numerators over one positive common
/// denominator, fully reduced, so structural equality at a fixed conductor is
/// value equality. Values at different conductors compare equal when they
/// agree after lifting to the lcm conductor.
#[derive(Clone)]
pub struct CyclotomicNumber {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl CyclotomicNumber {
    fn from_parts(conductor: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len() as u64, euler_phi(conductor));
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        if !den.is_one() {
            let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
            if !g.is_one() {
                num.iter_mut().for_each(|c| *c /= &g);
                den /= g;
            }
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        CyclotomicNumber { conductor, num, den }
    }

    /// Canonical representative of `poly(zeta_n)`; `poly` is given lowest
    /// degree first and may have any length.
    pub fn reduce(n: u64, poly: &[BigRational]) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let den = crate::rational::common_denominator(poly);
        let mut num: Vec<BigInt> = poly
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        if num.is_empty() {
            num.push(BigInt::zero());
        }
        reduce_in_place(&mut num, n);
        Self::from_parts(n, num, den)
    }

    pub fn from_integer_poly(n: u64, poly: &[i64]) -> Self {
        let mut num: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
        if num.is_empty() {
            num.push(BigInt::zero());
        }
        reduce_in_place(&mut num, n);
        Self::from_parts(n, num, BigInt::one())
    }

    pub fn zero(n: u64) -> Self {
        Self::from_rational(n, &BigRational::zero())
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, &BigRational::one())
    }

    pub fn from_integer(n: u64, k: i64) -> Self {
        Self::from_rational(n, &BigRational::from_integer(k.into()))
    }

    pub fn from_rational(n: u64, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); euler_phi(n) as usize];
        num[0] = q.numer().clone();
        Self::from_parts(n, num, q.denom().clone())
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let e = arith::modulo(k, n) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        reduce_in_place(&mut poly, n);
        Self::from_parts(n, poly, BigInt::one())
    }

    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// `1 - zeta_n^k`.
    pub fn one_minus_zeta(n: u64, k: i64) -> Self {
        &Self::one(n) - &Self::zeta_pow(n, k)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Represent both operands at their lcm conductor.
    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let n = lcm(self.conductor, other.conductor);
        (self.lift_unchecked(n), other.lift_unchecked(n))
    }

    fn lift_unchecked(&self, big: u64) -> Self {
        if big == self.conductor {
            return self.clone();
        }
        let step = (big / self.conductor) as usize;
        let mut poly = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        reduce_in_place(&mut poly, big);
        Self::from_parts(big, poly, self.den.clone())
    }

    /// The same algebraic number written with ambient conductor `big`.
    pub fn lift(&self, big: u64) -> Result<Self> {
        if big == 0 || big % self.conductor != 0 {
            return Err(Error::NotDivisible { from: self.conductor, to: big });
        }
        Ok(self.lift_unchecked(big))
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => self.checked_div(other)?,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other);
        Ok(&a * &b.inverse()?)
    }

    /// Multiplicative inverse through the extended Euclidean algorithm
    /// against `Phi_n`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, &q.recip()));
        }
        let poly = QPoly(
            self.num
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        let modulus = QPoly(
            cyclotomic_polynomial(self.conductor)
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        );
        let inv = poly
            .inverse_mod(&modulus)
            .expect("cyclotomic polynomial is irreducible");
        let inv = Self::reduce(self.conductor, &inv.0);
        Ok(inv.scale(&BigRational::from_integer(self.den.clone())))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.conductor, num, &self.den * q.denom())
    }

    /// `self^k` for any integer `k` (negative powers invert).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.conductor);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Image under `sigma_a : zeta_n -> zeta_n^a`.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let n = self.conductor;
        let a = arith::modulo(a, n);
        if gcd(a, n) != 1 && n > 1 {
            return Err(Error::NotCoprime { a: a as i64, n });
        }
        Ok(self.galois_unchecked(a))
    }

    pub(crate) fn galois_unchecked(&self, a: u64) -> Self {
        let n = self.conductor;
        if a % n == 1 % n || n <= 2 {
            return self.clone();
        }
        let mut poly = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[((i as u64 * a) % n) as usize] += c;
            }
        }
        reduce_in_place(&mut poly, n);
        Self::from_parts(n, poly, self.den.clone())
    }

    /// Apply `sigma_a` where `a` is a residue modulo some `m`; the action on
    /// this value only depends on `a` modulo `gcd(m, conductor)`, so a unit
    /// lift is chosen when `m` and the conductor differ.
    pub fn galois_mod(&self, a: u64, m: u64) -> Self {
        let n = self.conductor;
        let big = lcm(m, n);
        let lifted = arith::lift_unit(a % m, m, big);
        self.galois_unchecked(lifted % n)
    }

    pub fn conj(&self) -> Self {
        self.galois_unchecked(self.conductor.saturating_sub(1))
    }

    pub fn is_fixed_by(&self, a: u64) -> bool {
        self.galois_unchecked(a % self.conductor) == *self
    }

    /// Smallest `f` (not `2 mod 4`) with this value in `Q(zeta_f)`, and the
    /// value written at conductor `f`.
    pub fn minimal_conductor(&self) -> (u64, Self) {
        let n = self.conductor;
        for f in divisors(n) {
            if f % 4 == 2 {
                continue;
            }
            let fixed = kernel_generators(n, f)
                .into_iter()
                .all(|a| self.is_fixed_by(a));
            if fixed {
                let down = self
                    .descend_exact(f)
                    .expect("fixed by the kernel implies membership");
                return (f, down);
            }
        }
        unreachable!("every value lies in Q(zeta_n)")
    }

    /// Rewrite at conductor `f`, failing when the value is not in `Q(zeta_f)`.
    pub fn descend(&self, f: u64) -> Result<Self> {
        if f == self.conductor {
            return Ok(self.clone());
        }
        let g = gcd(f, self.conductor);
        let fixed = kernel_generators(self.conductor, g)
            .into_iter()
            .all(|a| self.is_fixed_by(a));
        if !fixed {
            return Err(Error::NotInField(format!("value is not in Q(zeta_{f})")));
        }
        let down = self.descend_exact(g).ok_or_else(|| {
            Error::NotInField(format!("value is not in Q(zeta_{f})"))
        })?;
        down.lift(f)
    }

    /// Solve for the coordinates at conductor `f | n` by elimination against
    /// the lifted power basis of `Q(zeta_f)`.
    fn descend_exact(&self, f: u64) -> Option<Self> {
        let n = self.conductor;
        if f == n {
            return Some(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(f, &q));
        }
        let k = euler_phi(f) as usize;
        let dim = self.num.len();
        // rows: lifted basis vectors, augmented with an identity block
        let mut rows: Vec<Vec<BigRational>> = (0..k)
            .map(|j| {
                let lifted = Self::zeta_pow(f, j as i64).lift_unchecked(n);
                let mut row: Vec<BigRational> = lifted
                    .num
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                row.extend((0..k).map(|i| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let target: Vec<BigRational> = self.coeffs();
        // reduce target against an echelon form of the basis rows
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for col in 0..dim {
            let Some(p) = (r..k).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            rows[r].iter_mut().for_each(|x| *x *= &inv);
            for i in 0..k {
                if i != r && !rows[i][col].is_zero() {
                    let factor = rows[i][col].clone();
                    let pivot_row = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                        *x -= &factor * y;
                    }
                }
            }
            pivots.push((r, col));
            r += 1;
            if r == k {
                break;
            }
        }
        let mut residual = target;
        let mut coords = vec![BigRational::zero(); k];
        for &(row, col) in &pivots {
            let c = residual[col].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(rows[row][..dim].iter()) {
                *x -= &c * y;
            }
            for (x, y) in coords.iter_mut().zip(rows[row][dim..].iter()) {
                *x += &c * y;
            }
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::reduce(f, &coords))
    }
}

/// Generators of the kernel of `(Z/n)^x -> (Z/f)^x`, for `f | n`.
pub(crate) fn kernel_generators(n: u64, f: u64) -> Vec<u64> {
    let kernel: Vec<u64> = arith::units(n)
        .into_iter()
        .filter(|&a| a % f.max(1) == 1 % f.max(1))
        .collect();
    greedy_generators(&kernel, n)
}

/// A generating set of the subgroup `elements` of `(Z/n)^x`.
pub(crate) fn greedy_generators(elements: &[u64], n: u64) -> Vec<u64> {
    let mut span: std::collections::BTreeSet<u64> = [1 % n.max(1)].into_iter().collect();
    let mut gens = Vec::new();
    for &g in elements {
        if span.contains(&g) {
            continue;
        }
        gens.push(g);
        // close the span under multiplication by the new generator
        let mut frontier: Vec<u64> = span.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &h in gens.iter() {
                let y = arith::mul_mod(x, h, n);
                if span.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.aligned(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

// cross-multiplied denominators
#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = self.aligned(rhs);
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        CyclotomicNumber::from_parts(a.conductor, num, &a.den * &b.den)
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = self.aligned(rhs);
        let num = mul_reduced(&a.num, &b.num, a.conductor);
        CyclotomicNumber::from_parts(a.conductor, num, &a.den * &b.den)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, i),
            };
            let coeff = if c.denom().is_one() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            terms.push(match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                (false, _) => format!("{coeff}*{mono}"),
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn cn(n: u64, poly: &[i64]) -> CyclotomicNumber {
        CyclotomicNumber::from_integer_poly(n, poly)
    }

    #[test]
    fn reduce_examples() {
        assert!(cn(3, &[1, 1, 1]).is_zero());
        assert_eq!(cn(4, &[0, 0, 1]), CyclotomicNumber::from_integer(4, -1));
        // x^6 = x^2 * x^4 = x^2 (x^2 - 1) = x^4 - x^2 = -1 mod x^4 - x^2 + 1
        assert_eq!(cn(12, &[0, 0, 0, 0, 0, 0, 1]), CyclotomicNumber::from_integer(12, -1));
    }

    #[test]
    fn arith_examples() {
        let z5 = CyclotomicNumber::zeta(5);
        let prod = z5.arith(&CyclotomicNumber::zeta_pow(5, 4), ArithOp::Mul).unwrap();
        assert!(prod.is_one());

        let a = CyclotomicNumber::one_minus_zeta(3, 1);
        let b = CyclotomicNumber::one_minus_zeta(3, 2);
        assert_eq!(&a * &b, CyclotomicNumber::from_integer(3, 3));

        let one = CyclotomicNumber::one(4);
        let q = one.arith(&CyclotomicNumber::one_minus_zeta(4, 1), ArithOp::Div).unwrap();
        let expected = CyclotomicNumber::reduce(4, &[rat(1, 2), rat(1, 2)]);
        assert_eq!(q, expected);

        assert_eq!(
            one.arith(&CyclotomicNumber::zero(4), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn galois_examples() {
        let x = cn(7, &[2, -1, 0, 5]);
        assert_eq!(x.galois(1).unwrap(), x);
        assert_eq!(CyclotomicNumber::zeta(8).galois(-1).unwrap(), CyclotomicNumber::zeta_pow(8, 7));
        assert_eq!(
            CyclotomicNumber::one_minus_zeta(5, 1).galois(2).unwrap(),
            CyclotomicNumber::one_minus_zeta(5, 2)
        );
        assert!(CyclotomicNumber::zeta(6).galois(3).is_err());
    }

    #[test]
    fn lift_examples() {
        let z3 = CyclotomicNumber::zeta(3).lift(12).unwrap();
        assert_eq!(z3.conductor(), 12);
        assert_eq!(z3, CyclotomicNumber::zeta_pow(12, 4));
        let five = CyclotomicNumber::from_integer(1, 5).lift(7).unwrap();
        assert_eq!(five.as_rational(), Some(int(5)));
        assert_eq!(
            CyclotomicNumber::one_minus_zeta(4, 1).lift(12).unwrap(),
            CyclotomicNumber::one_minus_zeta(12, 3)
        );
        assert!(CyclotomicNumber::zeta(4).lift(6).is_err());
    }

    #[test]
    fn minimal_conductor_examples() {
        let (f, v) = CyclotomicNumber::from_integer(15, 7).minimal_conductor();
        assert_eq!((f, v.conductor()), (1, 1));
        let (f, v) = CyclotomicNumber::zeta_pow(12, 4).minimal_conductor();
        assert_eq!(f, 3);
        assert_eq!(v, CyclotomicNumber::zeta(3));
        let x = &CyclotomicNumber::zeta(8) + &CyclotomicNumber::zeta_pow(8, -1);
        let (f, v) = x.minimal_conductor();
        assert_eq!(f, 8);
        assert_eq!(v, x);
        // zeta_6 = -zeta_3^2 has conductor 3
        let (f, _) = CyclotomicNumber::zeta(6).minimal_conductor();
        assert_eq!(f, 3);
    }

    #[test]
    fn descend_rejects_outsiders() {
        assert!(CyclotomicNumber::zeta(12).descend(4).is_err());
        let sqrt_m3 = &CyclotomicNumber::zeta(3) - &CyclotomicNumber::zeta_pow(3, 2);
        let up = sqrt_m3.lift(12).unwrap();
        assert_eq!(up.descend(3).unwrap(), sqrt_m3);
    }

    #[test]
    fn inverse_roundtrip() {
        let x = cn(15, &[3, -1, 4, 1, -5, 9, 2]);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn display() {
        assert_eq!(CyclotomicNumber::one_minus_zeta(5, 1).to_string(), "1 - z5");
        assert_eq!(CyclotomicNumber::zero(5).to_string(), "0");
    }
}
