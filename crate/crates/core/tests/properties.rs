use std::sync::Arc;

use eulerlab::{AbelianField, CyclotomicNumber, IntElement};
use proptest::prelude::*;

const LEVELS: [u64; 6] = [3, 5, 7, 9, 12, 15];

fn element(n: u64) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec(-5i64..=5, n as usize).prop_map(move |c| CyclotomicNumber::from_integer_poly(n, &c))
}

fn level_and_pair() -> impl Strategy<Value = (u64, CyclotomicNumber, CyclotomicNumber)> {
    prop::sample::select(LEVELS.to_vec()).prop_flat_map(|n| (Just(n), element(n), element(n)))
}

fn unit_residue(n: u64) -> impl Strategy<Value = i64> {
    (1..n as i64).prop_filter("unit", move |a| num_integer::gcd(*a, n as i64) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((_n, x, y) in level_and_pair()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) * &x, &(&x * &x) + &(&y * &x));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.inverse().unwrap(), x);
        }
    }

    #[test]
    fn galois_composes((n, x, _y) in level_and_pair(), a in 1i64..200, b in 1i64..200) {
        let (a, b) = (a * n as i64 + 1, b * n as i64 - 1);
        let lhs = x.galois(a).unwrap().galois(b).unwrap();
        prop_assert_eq!(lhs, x.galois((a * b) % n as i64).unwrap());
    }

    #[test]
    fn galois_is_a_ring_map((n, x, y) in level_and_pair(), k in 0usize..8) {
        let units: Vec<i64> = (1..n as i64).filter(|a| num_integer::gcd(*a, n as i64) == 1).collect();
        let a = units[k % units.len()];
        prop_assert_eq!((&x * &y).galois(a).unwrap(), &x.galois(a).unwrap() * &y.galois(a).unwrap());
    }

    #[test]
    fn lift_then_minimal_conductor((n, x, _y) in level_and_pair(), f in 1u64..4) {
        let big = if n % 4 == 0 { n * (2 * f + 1) } else { n * (4 * f + 1) };
        let (m, back) = x.lift(big).unwrap().minimal_conductor();
        let (m0, x0) = x.minimal_conductor();
        prop_assert_eq!(m, m0);
        prop_assert_eq!(back, x0);
    }

    #[test]
    fn action_is_multiplicative(
        n in prop::sample::select(vec![5u64, 7, 9, 15]),
        r in prop::collection::vec(-2i64..=2, 8),
        s in prop::collection::vec(-2i64..=2, 8),
    ) {
        let g = AbelianField::cyclotomic(n).unwrap().galois_group();
        let k = g.order();
        let r = IntElement::from_ints(Arc::clone(&g), &r.iter().cycle().take(k).copied().collect::<Vec<_>>()).unwrap();
        let s = IntElement::from_ints(Arc::clone(&g), &s.iter().cycle().take(k).copied().collect::<Vec<_>>()).unwrap();
        let u = CyclotomicNumber::one_minus_zeta(n, 1);
        prop_assert_eq!(r.mul(&s).unwrap().apply(&u).unwrap(), r.apply(&s.apply(&u).unwrap()).unwrap());
        prop_assert_eq!(r.add(&s).unwrap().apply(&u).unwrap(), &r.apply(&u).unwrap() * &s.apply(&u).unwrap());
    }

    #[test]
    fn fixed_elements_descend(n in prop::sample::select(vec![7u64, 9, 13]), a in unit_residue(13)) {
        // trace to the fixed field of <a mod n> is fixed by a
        let a = a.rem_euclid(n as i64).max(1);
        prop_assume!(num_integer::gcd(a, n as i64) == 1);
        let z = CyclotomicNumber::zeta(n);
        let mut orbit = z.clone();
        let mut t = z.clone();
        loop {
            orbit = orbit.galois(a).unwrap();
            if orbit == z {
                break;
            }
            t = &t + &orbit;
        }
        prop_assert!(t.is_fixed_by(a as u64));
    }
}
