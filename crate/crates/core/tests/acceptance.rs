//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use eulerlab::analysis::{
    certify_nonkilling, compose, decompose, qspan_membership_with, torsion_enumerate, verify_annihilator,
    AnnihilatorOptions, Certificate, DecomposeOutcome, MembershipOptions, PlusContext,
};
use eulerlab::arith::{is_canonical_conductor, prime_divisors, units};
use eulerlab::euler::{check_strict, verify_distribution_with};
use eulerlab::group_ring::{char_kills_el, characters, el_predicate};
use eulerlab::{
    coleman_system, cyclotomic_system, subfields, AbelianField, CyclotomicNumber, IntElement, PairMode, VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn levels(max: u64) -> impl Iterator<Item = u64> {
    (3..=max).filter(|&n| is_canonical_conductor(n))
}

fn prime_sets() -> Vec<Vec<u64>> {
    vec![vec![3], vec![5], vec![7], vec![3, 5], vec![3, 7], vec![5, 7], vec![3, 5, 7]]
}

/// Fields with conductor exactly `m`.
fn fields_of_conductor(m: u64) -> Vec<AbelianField> {
    subfields(m)
        .unwrap()
        .into_iter()
        .map(|f| f.canonicalize())
        .filter(|f| f.modulus() == m)
        .collect()
}

fn composite(m: u64) -> bool {
    prime_divisors(m).len() >= 2
}

fn random_element(g: &Arc<eulerlab::GaloisGroup>, rng: &mut ChaCha8Rng, support: Option<usize>) -> IntElement {
    let n = g.order();
    let mut coeffs = vec![0i64; n];
    match support {
        None => coeffs.iter_mut().for_each(|c| *c = rng.random_range(-3..=3)),
        Some(s) => {
            for _ in 0..s {
                coeffs[rng.random_range(0..n)] = rng.random_range(-3..=3);
            }
        }
    }
    IntElement::from_ints(Arc::clone(g), &coeffs).unwrap()
}

fn distribution_suite() -> Outcome {
    let all = VerifyOptions { mode: PairMode::AllPairs, ..Default::default() };
    let with_q = VerifyOptions { mode: PairMode::AllPairs, include_rational_prime_power: true };
    let mut checked = 0;
    for n in levels(60) {
        let r = verify_distribution_with(&cyclotomic_system(n).unwrap(), &all).unwrap();
        if !r.passed() {
            return Err(format!("cyclotomic level {n}: {:?}", r.violations[0]));
        }
        checked += r.pairs_checked;
        for pi in prime_sets() {
            let r = verify_distribution_with(&coleman_system(&pi, n).unwrap(), &with_q).unwrap();
            if !r.passed() {
                return Err(format!("coleman {pi:?} level {n}"));
            }
            checked += r.pairs_checked;
        }
    }
    Ok(format!("{checked} pairs"))
}

fn full_norm(m: u64) -> CyclotomicNumber {
    let x = CyclotomicNumber::one_minus_zeta(m, 1);
    units(m).into_iter().fold(CyclotomicNumber::one(m), |acc, a| &acc * &x.galois(a as i64).unwrap())
}

fn norm_identities() -> Outcome {
    let mut count = 0;
    for m in 2..=64u64 {
        let ps = prime_divisors(m);
        let expected = match ps.as_slice() {
            [p] => *p as i64,
            _ if m <= 60 => 1,
            _ => continue,
        };
        if full_norm(m) != CyclotomicNumber::from_integer(1, expected) {
            return Err(format!("conductor {m}"));
        }
        count += 1;
    }
    Ok(format!("{count} conductors"))
}

fn coleman_torsion() -> Outcome {
    let mut count = 0;
    for n in levels(60) {
        for pi in prime_sets() {
            let u = coleman_system(&pi, n).unwrap();
            if !u.mul(&u).unwrap().is_trivial() || !u.one_plus_tau().unwrap().is_trivial() {
                return Err(format!("{pi:?} at level {n}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} systems"))
}

/// Precision decisions recorded for the stability criterion.
#[derive(Default)]
struct Stability {
    rechecked: usize,
    changed: Vec<String>,
}

fn annihilator_suite(stab: &mut Stability) -> Outcome {
    let mut fields = 0;
    let mut trials = 0;
    for m in (6..=60).filter(|&m| is_canonical_conductor(m) && composite(m)) {
        for l in fields_of_conductor(m).into_iter().filter(AbelianField::is_real) {
            let opts = AnnihilatorOptions { trials: 10, seed: m, start_bits: 128, max_bits: 1024 };
            let r = verify_annihilator(&l, &opts).map_err(|e| format!("{l}: {e}"))?;
            if !r.basis_kills {
                return Err(format!("{l}: a basis element does not kill"));
            }
            if !r.rank_matches() {
                return Err(format!("{l}: rank {} vs {} characters", r.basis.len(), r.killed_characters));
            }
            if r.trials.len() != 10 || r.trials.iter().any(|t| t.bits > 1024) {
                return Err(format!("{l}: trials incomplete"));
            }
            let ctx = PlusContext::new(&l);
            for t in &r.trials {
                stab.rechecked += 1;
                if certify_nonkilling(&ctx, &t.element, t.bits * 2, t.bits * 2).is_err() {
                    stab.changed.push(format!("annihilator trial at {l}"));
                }
            }
            fields += 1;
            trials += r.trials.len();
        }
    }
    Ok(format!("{fields} fields, {trials} certified non-killing trials"))
}

fn predicate_suite() -> Outcome {
    let mut checks = 0;
    for m in levels(60).chain([1]) {
        for l in fields_of_conductor(m) {
            let g = l.maximal_real_subfield().galois_group();
            for psi in characters(&g) {
                if char_kills_el(&psi, &l).unwrap() != el_predicate(&psi, &l) {
                    return Err(format!("{l}: {psi:?}"));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (field, character) pairs"))
}

fn strictness_suite() -> Outcome {
    let mut pairs = BTreeSet::new();
    for n in levels(100) {
        let r = check_strict(&cyclotomic_system(n).unwrap()).unwrap();
        if !r.passed() {
            return Err(format!("level {n}: {} failures", r.failures.len()));
        }
        // the same pair appears at every level it fits in; count it once
        let lattice = eulerlab::euler::LevelLattice::new(n).unwrap();
        pairs.extend(lattice.fields().iter().filter(|f| f.modulus() == n).map(|f| f.to_string()));
    }
    let r = check_strict(&coleman_system(&[3], 15).unwrap()).unwrap();
    let Some(f) = r.failures.first() else {
        return Err("no failing pair for the Coleman system at level 15".into());
    };
    if f.residues.iter().all(|s| s == "0") {
        return Err("failing pair without a nonzero residue".into());
    }
    Ok(format!("cyclotomic strict at all levels <= 100; Coleman {{3}} fails at ({}, {}) above {}", f.sub, f.sup, f.prime))
}

fn decompose_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    for n in [9u64, 15, 21, 45] {
        let g = AbelianField::cyclotomic(n).unwrap().galois_group();
        let odd: Vec<u64> = prime_divisors(n);
        for _ in 0..20 {
            let pattern: Vec<BTreeSet<u64>> = (0u32..1 << odd.len())
                .filter(|_| rng.random_bool(0.5))
                .map(|mask| odd.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect())
                .collect();
            let r0 = random_element(&g, &mut rng, Some(5));
            let u = compose(n, &pattern, &r0).unwrap();
            match decompose(&u).map_err(|e| format!("level {n}: {e}"))? {
                DecomposeOutcome::Found(d) => {
                    if d.recompose().unwrap().components() != u.components() {
                        return Err(format!("level {n}: recomposition differs"));
                    }
                }
                DecomposeOutcome::NotFound(why) => return Err(format!("level {n}: {why}")),
            }
            done += 1;
        }
    }
    Ok(format!("{done} round trips"))
}

fn membership_suite(stab: &mut Stability) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut fields = 0;
    for m in [15u64, 21, 20, 45] {
        for l in fields_of_conductor(m).into_iter().filter(AbelianField::is_real) {
            let ctx = PlusContext::new(&l);
            let opts = MembershipOptions::default();
            for _ in 0..20 {
                let r = random_element(&ctx.group, &mut rng, None);
                let x = ctx.power(&r).unwrap();
                let res = qspan_membership_with(&ctx, &x, &opts).map_err(|e| format!("{l}: {e}"))?;
                if !res.member || !matches!(res.certificate, Certificate::Exact { .. }) {
                    return Err(format!("{l}: multiple not certified"));
                }
                stab.rechecked += 1;
                let again = qspan_membership_with(&ctx, &x, &MembershipOptions::at(res.precision_bits * 2)).unwrap();
                if !again.member {
                    stab.changed.push(format!("membership at {l}"));
                }
            }
            let two = CyclotomicNumber::from_integer(1, 2);
            let res = qspan_membership_with(&ctx, &two, &opts).map_err(|e| format!("{l}: {e}"))?;
            if res.member || !matches!(res.certificate, Certificate::Interval { .. }) {
                return Err(format!("{l}: 2 not certified outside"));
            }
            stab.rechecked += 1;
            let again = qspan_membership_with(&ctx, &two, &MembershipOptions::at(res.precision_bits * 2)).unwrap();
            if again.member {
                stab.changed.push(format!("non-membership of 2 at {l}"));
            }
            fields += 1;
        }
    }
    Ok(format!("{fields} fields"))
}

fn torsion_suite() -> Outcome {
    let mut notes = Vec::new();
    for n in [9, 15] {
        let rep = torsion_enumerate(n).map_err(|e| e.to_string())?;
        if !rep.span_contained {
            return Err(format!("level {n}: Coleman span not contained"));
        }
        if !rep.all_verified {
            return Err(format!("level {n}: an output fails verification"));
        }
        notes.push(format!(
            "level {n}: {} systems, span {}, extras {} ({} outside R c)",
            rep.systems.len(),
            rep.coleman_span.len(),
            rep.extras.len(),
            rep.outside_module.len()
        ));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let mut failed = false;
    let mut stab = Stability::default();
    let mut report = |k: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("PASS {k:>2} {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed = true;
                println!("FAIL {k:>2} {name}: {msg} ({secs:.1}s)");
            }
        }
    };
    report(1, "distribution relations", &mut distribution_suite);
    report(2, "norm identities", &mut norm_identities);
    report(3, "Coleman torsion", &mut coleman_torsion);
    report(4, "annihilator", &mut || annihilator_suite(&mut stab));
    report(5, "character predicate", &mut predicate_suite);
    report(6, "strictness", &mut strictness_suite);
    report(7, "decomposition round trip", &mut decompose_suite);
    report(8, "span membership", &mut || membership_suite(&mut stab));
    report(9, "torsion probe", &mut torsion_suite);
    report(10, "precision stability", &mut || {
        if stab.changed.is_empty() {
            Ok(format!("{} interval decisions unchanged at doubled precision; strictness is exact", stab.rechecked))
        } else {
            Err(stab.changed.join(", "))
        }
    });
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
