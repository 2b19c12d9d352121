//! Benchmarks for the hot paths: coset enumeration, subgroup lattice
//! construction, breadth invariants, and isomorphism testing.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pgroups::constructions::{dihedral, extraspecial, quaternion, Sign};
use pgroups::enumeration::{enumerate_cosets, DEFAULT_MAX_COSETS};
use pgroups::invariants::{group_element_breadth, group_subgroup_breadth};
use pgroups::isomorphism::is_isomorphic;
use pgroups::lattice::{all_subgroups, LatticeConfig};
use pgroups::parse_presentation;

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_cosets");
    for m in [4usize, 5, 6, 7] {
        let half = 1usize << m;
        let text = format!("<a, b | a^{half} = 1, b^2 = 1, a^b = a^-1>");
        let pres = parse_presentation(&text).unwrap();
        group.bench_with_input(BenchmarkId::new("dihedral", 2 * half), &pres, |b, p| {
            b.iter(|| enumerate_cosets(p, DEFAULT_MAX_COSETS).unwrap())
        });
    }
    let q32 = parse_presentation("<a, b | a^16 = 1, b^2 = a^8, a^b = a^-1>").unwrap();
    group.bench_function("quaternion=32", |b| {
        b.iter(|| enumerate_cosets(&q32, DEFAULT_MAX_COSETS).unwrap())
    });
    group.finish();
}

fn bench_lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_subgroups");
    group.sample_size(10);
    let cfg = LatticeConfig::default();
    for g in [
        dihedral(32).unwrap(),
        extraspecial(2, 2, Sign::Plus).unwrap(),
        extraspecial(2, 3, Sign::Minus).unwrap(),
    ] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{}({})", g.label(), g.order())),
            &g,
            |b, g| b.iter(|| all_subgroups(g, &cfg).unwrap()),
        );
    }
    group.finish();
}

fn bench_invariants(c: &mut Criterion) {
    let es = extraspecial(2, 3, Sign::Plus).unwrap();
    c.bench_function("ebr ES(2^7,+)", |b| {
        b.iter(|| group_element_breadth(&es).unwrap())
    });
    let cfg = LatticeConfig::default();
    let lat = all_subgroups(&es, &cfg).unwrap();
    c.bench_function("sbr ES(2^7,+) given lattice", |b| {
        b.iter(|| group_subgroup_breadth(&es, &lat).unwrap())
    });
}

fn bench_isomorphism(c: &mut Criterion) {
    let d16 = dihedral(16).unwrap();
    let q16 = quaternion(16).unwrap();
    let d16b = pgroups::constructions::from_presentation(
        "<r, s | r^8 = 1, s^2 = 1, r^s = r^-1>",
    )
    .unwrap();
    c.bench_function("is_isomorphic D16~D16'", |b| {
        b.iter(|| is_isomorphic(&d16, &d16b).unwrap())
    });
    c.bench_function("is_isomorphic D16!~Q16", |b| {
        b.iter(|| is_isomorphic(&d16, &q16).unwrap())
    });
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_lattice,
    bench_invariants,
    bench_isomorphism
);
criterion_main!(benches);
