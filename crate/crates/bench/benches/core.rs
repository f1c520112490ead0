use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use eulerlab::analysis::qspan_membership;
use eulerlab::euler::verify_distribution;
use eulerlab::{coleman_odd, cyclotomic_system, AbelianField, CyclotomicNumber};

fn distribution(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_distribution");
    g.sample_size(10);
    for n in [15u64, 21, 45] {
        let sys = cyclotomic_system(n).unwrap();
        g.bench_function(format!("cyclotomic/{n}"), |b| b.iter(|| verify_distribution(black_box(&sys)).unwrap()));
    }
    let sys = coleman_odd(45).unwrap();
    g.bench_function("coleman_odd/45", |b| b.iter(|| verify_distribution(black_box(&sys)).unwrap()));
    g.finish();
}

fn membership(c: &mut Criterion) {
    let mut g = c.benchmark_group("membership");
    g.sample_size(10);
    let two = CyclotomicNumber::from_integer(1, 2);
    for m in [15u64, 21] {
        let l = AbelianField::real_cyclotomic(m).unwrap();
        g.bench_function(format!("two_in_{m}+"), |b| b.iter(|| qspan_membership(black_box(&two), &l).unwrap()));
    }
    g.finish();
}

fn residues(c: &mut Criterion) {
    let mut g = c.benchmark_group("residues");
    let x = CyclotomicNumber::one_minus_zeta(35, 1);
    for l in [2u64, 11, 71] {
        g.bench_function(format!("one_minus_zeta35_above_{l}"), |b| b.iter(|| black_box(&x).residues_above(l).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, distribution, membership, residues);
criterion_main!(benches);
