use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ipskit::corpus::{generate, CorpusConfig};
use ipskit::exec::Strategy;
use ipskit::gadget::gadgetize;
use ipskit::instances::gadgeted_ry_circuit;
use ipskit::rank::rank_sweep;
use ipskit::refute::assemble_refutation;
use ipskit::verify::{boolean_image_with, verify_pit_with, PitConfig};

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn image(c: &mut Criterion) {
    let (p, _) = gadgeted_ry_circuit(2).unwrap();
    let mut group = c.benchmark_group("boolean_image");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, p.variables().len()), &s, |b, &s| {
            b.iter(|| boolean_image_with(&p, 40, 0, 0, s))
        });
    }
    group.finish();
}

fn pit(c: &mut Criterion) {
    let cert = generate(&CorpusConfig { count: 50, max_total_vars: None, ..Default::default() })
        .iter()
        .map(|src| {
            let (cp, ledger) = gadgetize(src).unwrap();
            assemble_refutation(&cp, &ledger).unwrap()
        })
        .max_by_key(|cert| cert.total_metrics().size)
        .unwrap();
    let cfg = PitConfig { trials: 64, ..PitConfig::default() };
    let mut group = c.benchmark_group("verify_pit");
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, cert.len()), &s, |b, &s| {
            b.iter(|| verify_pit_with(&cert, &cfg, s))
        });
    }
    group.finish();
}

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_sweep");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 4), &s, |b, &s| b.iter(|| rank_sweep(4, s).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, image, pit, rank);
criterion_main!(benches);
