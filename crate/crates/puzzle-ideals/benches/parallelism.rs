//! Benchmarks comparing the rayon data-parallel core against the forced
//! sequential fallback, using the same binary and the run-time switch in
//! `puzzle_ideals::par`.

use criterion::{criterion_group, criterion_main, Criterion};

use puzzle_ideals::constants::{constant, groebner_basis_of, side_free_sweep, Backend};
use puzzle_ideals::grid::parse_word;
use puzzle_ideals::groebner::certify;
use puzzle_ideals::ideal::{build_ideal, BoundarySpec, IdealKind};
use puzzle_ideals::par::set_force_sequential;
use puzzle_ideals::pieces::{builtin_piece_set, PieceSetId};
use puzzle_ideals::refdata;

/// The size-16 side-free oracle sweep: 76 tilings over a 152-interval grid,
/// dominated by the parallel backtracking search.
fn bench_sweep(c: &mut Criterion) {
    let set = builtin_piece_set(PieceSetId::Omega0);
    let lambda = parse_word(refdata::SWEEP16_LAMBDA).unwrap();
    let mu = parse_word(refdata::SWEEP16_MU).unwrap();
    let mut group = c.benchmark_group("sweep16_oracle");
    group.bench_function("parallel", |b| {
        set_force_sequential(false);
        b.iter(|| side_free_sweep(&lambda, &mu, &set, Backend::Oracle).unwrap());
    });
    group.bench_function("sequential", |b| {
        set_force_sequential(true);
        b.iter(|| side_free_sweep(&lambda, &mu, &set, Backend::Oracle).unwrap());
        set_force_sequential(false);
    });
    group.finish();
}

/// S-polynomial certification of the size-6 reference basis, dominated by
/// the parallel all-pairs reduction.
fn bench_certify(c: &mut Criterion) {
    let set = builtin_piece_set(PieceSetId::Omega0);
    let lambda = BoundarySpec::Word(parse_word(refdata::SIZE6_LAMBDA).unwrap());
    let mu = BoundarySpec::Word(parse_word(refdata::SIZE6_MU).unwrap());
    let nu = BoundarySpec::Word(parse_word(refdata::SIZE6_NU).unwrap());
    let ideal = build_ideal(&lambda, &mu, &nu, &set, IdealKind::Full).unwrap();
    let basis = groebner_basis_of(&ideal).unwrap();
    let mut group = c.benchmark_group("certify6");
    group.bench_function("parallel", |b| {
        set_force_sequential(false);
        b.iter(|| assert!(certify(&basis).unwrap()));
    });
    group.bench_function("sequential", |b| {
        set_force_sequential(true);
        b.iter(|| assert!(certify(&basis).unwrap()));
        set_force_sequential(false);
    });
    group.finish();
}

/// A batch of oracle constants over size-5 boundary triples, exercising the
/// search-state fan-out on many small instances.
fn bench_batch_constants(c: &mut Criterion) {
    let set = builtin_piece_set(PieceSetId::Omega0);
    let words: Vec<Vec<u8>> = ["01011", "01101", "10101", "11010", "10110"]
        .iter()
        .map(|w| parse_word(w).unwrap())
        .collect();
    let run = || {
        let mut total = 0;
        for lambda in &words {
            for mu in &words {
                for nu in &words {
                    total += constant(lambda, mu, nu, &set, Backend::Oracle)
                        .unwrap()
                        .count;
                }
            }
        }
        total
    };
    let mut group = c.benchmark_group("batch_constants_size5");
    group.bench_function("parallel", |b| {
        set_force_sequential(false);
        b.iter(run);
    });
    group.bench_function("sequential", |b| {
        set_force_sequential(true);
        b.iter(run);
        set_force_sequential(false);
    });
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_certify, bench_batch_constants);
criterion_main!(benches);
