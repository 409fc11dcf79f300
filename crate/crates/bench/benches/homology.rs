use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use topsym_bench::random_matrix;
use topsym_core::complexes::relative_betti;
use topsym_core::spaces::{builtin_example, reeb_ball, CATALOG_SAMPLE};
use topsym_core::{build_matching, les_exactness_check, morse_betti, ComplexPair, SeedOrder};

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("gf2_rank");
    for n in [64usize, 256, 1024] {
        let m = random_matrix(n, n, 0.1, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| black_box(m.rank()))
        });
    }
    group.finish();
}

fn betti(c: &mut Criterion) {
    let split = reeb_ball(3).unwrap();
    let pair = ComplexPair::new(split.complex().clone(), split.negative().clone()).unwrap();
    c.bench_function("relative_betti/reeb_ball_3", |b| {
        b.iter(|| black_box(relative_betti(&pair)))
    });
    let sphere = ComplexPair::absolute(builtin_example("sphere_4").unwrap().complex().clone());
    c.bench_function("les_exactness/sphere_4", |b| {
        b.iter(|| black_box(les_exactness_check(&sphere).unwrap()))
    });
}

fn morse(c: &mut Criterion) {
    let pairs: Vec<ComplexPair> = CATALOG_SAMPLE
        .iter()
        .map(|name| {
            let split = builtin_example(name).unwrap().into_split();
            ComplexPair::new(split.complex().clone(), split.negative().clone()).unwrap()
        })
        .collect();
    c.bench_function("morse_betti/catalog", |b| {
        b.iter(|| {
            for pair in &pairs {
                let m = build_matching(pair, &SeedOrder::Lexicographic).unwrap();
                black_box(morse_betti(&m).unwrap());
            }
        })
    });
}

criterion_group!(benches, rank, betti, morse);
criterion_main!(benches);
