use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use branequant::graphs::{decode_key, Scheme};
use branequant::weights::{weight_mc_with, Exec, McOptions};

const SAMPLES: u64 = 200_000;

fn serial_vs_parallel(c: &mut Criterion) {
    let graphs = [
        ("wedge", "1;0;2;H;v1:(B1,s),(B2,s)", Scheme::HalfPlane),
        ("second-order", "2;0;2;H;v1:(2,s),(B2,s);v2:(B1,s),(B2,s)", Scheme::HalfPlane),
        ("quadrant", "1;0;2;Q;v1:(B1,pp),(B2,pm)", Scheme::QuadrantW0),
    ];
    let mut group = c.benchmark_group("weight_mc");
    group.sample_size(10);
    group.throughput(Throughput::Elements(SAMPLES));
    for (name, key, scheme) in graphs {
        let g = decode_key(key).unwrap();
        for (label, exec) in [("serial", Exec::Serial), ("parallel", Exec::Parallel)] {
            let opts = McOptions { samples: SAMPLES, exec, ..McOptions::default() };
            group.bench_with_input(BenchmarkId::new(label, name), &g, |b, g| {
                b.iter(|| weight_mc_with(black_box(g), scheme, &opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, serial_vs_parallel);
criterion_main!(benches);
