use std::collections::BTreeMap;

use super::*;
use crate::group_ring::IntElement;

fn field(s: &str) -> AbelianField {
    AbelianField::parse_mnemonic(s).unwrap()
}

#[test]
fn cyclotomic_components() {
    let c = cyclotomic_system(15).unwrap();
    assert_eq!(c.get(&field("5")).unwrap(), &CyclotomicNumber::one_minus_zeta(5, 1));
    let z = CyclotomicNumber::one_minus_zeta(5, 1);
    assert_eq!(c.get(&field("5+")).unwrap(), &(&z * &z.conj()));
    assert!(c.get(&AbelianField::rationals()).unwrap().is_one());
    let c9 = cyclotomic_system(9).unwrap();
    let n = AbelianField::rationals().norm_from(&field("9"), c9.full_level(9).unwrap()).unwrap();
    assert_eq!(n, CyclotomicNumber::from_integer(1, 3));
}

#[test]
fn cyclotomic_passes_and_q_pairs_are_excluded() {
    for n in [12, 15, 20, 21] {
        let c = cyclotomic_system(n).unwrap();
        let opts = VerifyOptions { mode: PairMode::AllPairs, ..Default::default() };
        let r = verify_distribution_with(&c, &opts).unwrap();
        assert!(r.passed(), "level {n}: {:?}", r.violations);
        assert!(!r.excluded.is_empty());
        let strict = VerifyOptions { include_rational_prime_power: true, ..opts };
        assert!(!verify_distribution_with(&c, &strict).unwrap().passed());
    }
}

#[test]
fn covering_mode_agrees_with_all_pairs() {
    let c = cyclotomic_system(12).unwrap();
    let bad = c.with_component(&field("12"), c.full_level(12).unwrap() * &CyclotomicNumber::zeta(3)).unwrap();
    for sys in [&c, &bad] {
        let a = verify_distribution(sys).unwrap();
        let b = verify_distribution_with(sys, &VerifyOptions { mode: PairMode::AllPairs, ..Default::default() }).unwrap();
        assert_eq!(a.passed(), b.passed());
    }
    assert!(!verify_distribution(&bad).unwrap().passed());
}

#[test]
fn coleman_examples() {
    let u = coleman_system(&[3], 45).unwrap();
    assert_eq!(u.get(&field("3")).unwrap(), &CyclotomicNumber::from_integer(1, -1));
    assert!(u.get(&field("9+")).unwrap().is_one());
    let u15 = coleman_system(&[3], 15).unwrap();
    assert!(u15.get(&field("15")).unwrap().is_one());
    let opts = VerifyOptions { mode: PairMode::AllPairs, include_rational_prime_power: true };
    assert!(verify_distribution_with(&u, &opts).unwrap().passed());
    assert!(u.mul(&u).unwrap().is_trivial());
    assert!(u.one_plus_tau().unwrap().is_trivial());
    assert!(coleman_system(&[2], 15).is_err());
    assert!(coleman_system(&[9], 15).is_err());
}

#[test]
fn extension_from_full_levels() {
    let n = 24;
    let lattice = LevelLattice::new(n).unwrap();
    let ms: Vec<u64> = lattice.fields().iter().map(|f| f.modulus()).filter(|&m| m > 1).collect();
    let circ: BTreeMap<u64, CyclotomicNumber> = ms.iter().map(|&m| (m, CyclotomicNumber::one_minus_zeta(m, 1))).collect();
    let (sys, report) = extend_from_full_levels(&circ, n).unwrap();
    assert!(report.passed());
    let c = cyclotomic_system(n).unwrap();
    assert_eq!(sys.components(), c.components());

    let ones: BTreeMap<u64, CyclotomicNumber> = ms.iter().map(|&m| (m, CyclotomicNumber::one(m))).collect();
    let (t, report) = extend_from_full_levels(&ones, n).unwrap();
    assert!(t.is_trivial() && report.passed());

    // the norm of zeta_24 down to Q(zeta_12) is -zeta_12, not zeta_12
    let roots: BTreeMap<u64, CyclotomicNumber> = ms.iter().map(|&m| (m, CyclotomicNumber::zeta(m))).collect();
    let (_, report) = extend_from_full_levels(&roots, n).unwrap();
    assert!(!report.passed());
}

#[test]
fn action_is_a_module_action() {
    let c = cyclotomic_system(15).unwrap();
    let g = AbelianField::cyclotomic(15).unwrap().galois_group();
    let r = IntElement::from_ints(g.clone(), &[2, -1, 0, 1, 0, 0, 3, 0]).unwrap();
    let s = IntElement::from_ints(g.clone(), &[0, 1, 1, 0, -2, 0, 0, 1]).unwrap();
    assert_eq!(c.act(&IntElement::one(g.clone())).unwrap().components(), c.components());
    let lhs = c.act(&s).unwrap().act(&r).unwrap();
    let rhs = c.act(&r.mul(&s).unwrap()).unwrap();
    assert_eq!(lhs.components(), rhs.components());
    assert!(verify_distribution(&lhs).unwrap().passed());
    let prod = c.mul(&lhs).unwrap();
    assert_eq!(prod.components(), lhs.mul(&c).unwrap().components());
    assert!(verify_distribution(&prod).unwrap().passed());
}

#[test]
fn strictness() {
    for n in [12, 15, 21, 35] {
        let r = check_strict(&cyclotomic_system(n).unwrap()).unwrap();
        assert!(r.passed() && r.pairs_checked > 0, "level {n}: {:?}", r.failures);
    }
    let r = check_strict(&coleman_system(&[3], 15).unwrap()).unwrap();
    assert!(r.failures.iter().any(|f| f.sub == field("3") && f.sup == field("15")));
    let r = check_strict(&coleman_odd(15).unwrap()).unwrap();
    assert!(r.passed());
}

#[test]
fn level_p_restriction() {
    let c = cyclotomic_system(15).unwrap();
    let r = c.restrict_level_p(5).unwrap();
    let five = field("5");
    assert!(r.fields().all(|f| f.contains_field(&five)));
    assert_eq!(r.len(), 2);
    assert!(verify_distribution(&r).unwrap().passed());
    assert!(c.restrict_level_p(7).is_err());
    let t = trivial_system(15).unwrap().restrict_level_p(3).unwrap();
    assert!(t.is_trivial());
}

#[test]
fn json_round_trip() {
    let c = cyclotomic_system(12).unwrap();
    let back = FiniteEulerSystem::from_json(&c.to_json()).unwrap();
    assert_eq!(back.components(), c.components());
    let r = c.restrict_level_p(3).unwrap();
    let back = FiniteEulerSystem::from_json(&r.to_json()).unwrap();
    assert_eq!(back.restricted_to(), Some(3));
    let mut broken = c.to_json();
    broken["components"].as_array_mut().unwrap().pop();
    assert!(FiniteEulerSystem::from_json(&broken).is_err());
}
