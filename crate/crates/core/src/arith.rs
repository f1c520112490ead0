//! Elementary number theory on machine integers.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// True for `p^k` with `k >= 1`. One is not a prime power.
pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() == 1
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut hi: Vec<u64> = ds.iter().rev().map(|d| n / d).filter(|&d| d * d != n).collect();
    ds.append(&mut hi);
    ds
}

/// Residues in `[0, n)` coprime to `n`. For `n = 1` this is `[0]`, the
/// single element of the trivial group.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

/// Reduce a signed integer into `[0, n)`.
pub fn modulo(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: i64, n: u64) -> Result<u64> {
    if n == 1 {
        return Ok(0);
    }
    let ext = (a.rem_euclid(n as i64)).extended_gcd(&(n as i64));
    if ext.gcd != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    Ok(modulo(ext.x, n))
}

/// Multiplicative order of `a` modulo `n`; `a` must be a unit.
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, n);
        k += 1;
    }
    k
}

/// Split `n = p^k * rest` with `p` not dividing `rest`.
pub fn split_prime(n: u64, p: u64) -> (u64, u64) {
    let mut pk = 1;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        pk *= p;
    }
    (pk, rest)
}

/// Some `a' ≡ a (mod n)` that is a unit modulo `m`, where `n | m`.
pub fn lift_unit(a: u64, n: u64, m: u64) -> u64 {
    debug_assert_eq!(m % n, 0);
    let a = a % n;
    (0..=m / n)
        .map(|k| a + k * n)
        .find(|&c| gcd(c, m) == 1)
        .unwrap_or_else(|| panic!("{a} is not a unit modulo {n}"))
        % m
}

/// Chinese remaindering for coprime moduli.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    debug_assert_eq!(gcd(m1, m2), 1);
    let m = m1 * m2;
    if m == 1 {
        return 0;
    }
    let inv = inv_mod(m1 as i64, m2).expect("coprime moduli");
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let diff = modulo(r2 as i64 - (r1 % m2) as i64, m2);
    let t = mul_mod(diff, inv, m2);
    (r1 % m1 + m1 * t) % m
}

/// Canonical representative of a conductor: odd `m` with `m ≡ 2 (mod 4)`
/// describe the same cyclotomic field as `m / 2`.
pub fn canonical_conductor(m: u64) -> u64 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

pub fn is_canonical_conductor(m: u64) -> bool {
    m >= 1 && m % 4 != 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), e, "phi({})", i + 1);
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn inverses_and_orders() {
        assert_eq!(inv_mod(2, 5).unwrap(), 3);
        assert_eq!(inv_mod(2, 15).unwrap(), 8);
        assert!(inv_mod(3, 15).is_err());
        assert_eq!(mult_order(2, 15), 4);
        assert_eq!(mult_order(2, 5), 4);
    }

    #[test]
    fn crt_and_lift() {
        let x = crt(2, 3, 3, 5);
        assert_eq!(x % 3, 2);
        assert_eq!(x % 5, 3);
        let a = lift_unit(3, 4, 12);
        assert_eq!(a, 7);
        assert_eq!(gcd(a, 12), 1);
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(9));
        assert!(is_prime_power(2));
        assert!(!is_prime_power(1));
        assert!(!is_prime_power(15));
    }
}
