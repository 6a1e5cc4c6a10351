use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use icrates::rates_k::rate_sym_p2p_k_oracle_with;
use icrates::sweep::{run, SweepSpec};
use icrates::verify::{run_suite, Suite};
use icrates::{ChannelKSym, Exec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for suite in [Suite::Thm1, Suite::Power, Suite::K3, Suite::MaxS] {
        for (name, exec) in MODES {
            let spec = suite.default_grid().with_exec(exec);
            group.bench_with_input(BenchmarkId::new(suite.label(), name), &spec, |b, spec| {
                b.iter(|| black_box(run_suite(suite, spec)))
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("p2p_oracle_k16");
    let ch = ChannelKSym::new(16, 100.0, 0.3).unwrap();
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(rate_sym_p2p_k_oracle_with(&ch, exec).unwrap()))
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let spec = SweepSpec::from_toml_str(
        r#"
model = "k-sym"
K = 4
P = 100.0
sweep = "a"
range = [0.001, 10.0]
points = 20000
spacing = "log"
schemes = ["ian", "tdma", "p2p", "etw", "approx-etw", "approx-tdma"]
"#,
    )
    .unwrap();
    let mut group = c.benchmark_group("sweep_k4_20000");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(run(&spec, exec).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, suites, oracle, sweep);
criterion_main!(benches);
