use num_bigint::BigInt;

use super::CyclotomicNumber;
use crate::arith::{gcd, modulo};
use crate::error::{Error, Result};
use crate::interval::{roots_of_unity, ComplexInterval};

/// Extra working bits on top of the requested precision.
pub const GUARD_BITS: u32 = 64;

impl CyclotomicNumber {
    /// Enclosure of the image of `self` under `zeta_n -> exp(2 pi i a / n)`.
    pub fn embed_complex(&self, a: i64, precision_bits: u32) -> Result<ComplexInterval> {
        let n = self.conductor();
        let a = modulo(a, n);
        if n > 1 && gcd(a, n) != 1 {
            return Err(Error::NotCoprime { a: a as i64, n });
        }
        Ok(self.embed_unchecked(a, precision_bits + GUARD_BITS))
    }

    pub(crate) fn embed_unchecked(&self, a: u64, prec: u32) -> ComplexInterval {
        let n = self.conductor();
        let table = roots_of_unity(n, prec);
        let mut acc = ComplexInterval::zero(prec);
        for (i, c) in self.numerators().iter().enumerate() {
            if c == &BigInt::ZERO {
                continue;
            }
            let j = ((i as u64 * a) % n) as usize;
            acc = acc.add(&table[j].mul_big(c));
        }
        acc.div_big(self.denominator())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::ArithOp;
    use crate::rational::{int, rat};

    #[test]
    fn embedding_examples() {
        let x = CyclotomicNumber::one_minus_zeta(4, 1).embed_complex(1, 64).unwrap();
        assert!(x.contains(&int(1), &int(-1)));

        let s = &CyclotomicNumber::zeta(3) + &CyclotomicNumber::zeta_pow(3, 2);
        assert!(s.embed_complex(1, 64).unwrap().contains(&int(-1), &int(0)));

        // 1 - exp(4 pi i / 5) = 1.80901699437494742410229341718281905886... - 0.58778525229247312916870595463907276859... i
        let y = CyclotomicNumber::one_minus_zeta(5, 1).embed_complex(2, 128).unwrap();
        let re = rat(1809016994374947424i64, 1000000000000000000);
        let im = rat(-587785252292473129i64, 1000000000000000000);
        assert!((y.re.lower() - &re) < rat(1, 1000000000000000000) && (&re - y.re.upper()) < rat(1, 1000000000000000000));
        assert!((y.im.lower() - &im) < rat(1, 1000000000000000000) && (&im - y.im.upper()) < rat(1, 1000000000000000000));
        assert!(y.re.width_log2().unwrap() < -120);
    }

    #[test]
    fn arithmetic_commutes_with_embedding() {
        let a = CyclotomicNumber::from_integer_poly(7, &[1, 2, 0, -3]);
        let b = CyclotomicNumber::from_integer_poly(7, &[0, 1, 1, 0, 5]);
        let q = a.arith(&b, ArithOp::Div).unwrap();
        let ea = a.embed_complex(3, 96).unwrap();
        let eb = b.embed_complex(3, 96).unwrap();
        let eq = q.embed_complex(3, 96).unwrap();
        assert!(eq.mul(&eb).intersects(&ea));
    }

    #[test]
    fn rejects_non_units() {
        assert!(CyclotomicNumber::zeta(6).embed_complex(2, 64).is_err());
    }
}
