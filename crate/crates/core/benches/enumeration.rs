use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nuobdd::bounds::detwidth::det_min_width_all_orders;
use nuobdd::bounds::fooling::{search_best_cut, DEFAULT_BUDGET};
use nuobdd::constructions::{build_exact_unitary, build_not_exact};
use nuobdd::{Backend, BooleanFunction, Evaluator, Exec, Mode, TruthTable, VariableOrder};

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("computes_function");
    g.sample_size(10);
    let cases = [
        ("notexact_16_8", build_not_exact(16, 8).unwrap(), BooleanFunction::not_exact(16, 8).unwrap(), Mode::Nondeterministic),
        ("exact_u_12_5", build_exact_unitary(12, 5).unwrap(), BooleanFunction::exact(12, 5).unwrap(), Mode::Exact),
    ];
    for (name, p, f, mode) in &cases {
        let ev = Evaluator::new(p, Backend::Exact).unwrap();
        for (label, exec) in EXECS {
            g.bench_with_input(BenchmarkId::new(*name, label), &exec, |b, &exec| {
                b.iter(|| black_box(ev.computes(f, *mode, exec).unwrap()))
            });
        }
    }
    g.finish();
}

fn all_orders(c: &mut Criterion) {
    let mut g = c.benchmark_group("det_min_width_all_orders");
    g.sample_size(10);
    // (x1 & x4) | (x2 & x5) | (x3 & x6) | x7
    let f = BooleanFunction::from_table(TruthTable::from_fn(7, |i| {
        let x = |v: usize| (i >> (7 - v)) & 1 == 1;
        (x(1) && x(4)) || (x(2) && x(5)) || (x(3) && x(6)) || x(7)
    }));
    for (label, exec) in EXECS {
        g.bench_function(label, |b| b.iter(|| black_box(det_min_width_all_orders(&f, exec).unwrap())));
    }
    g.finish();
}

fn fooling(c: &mut Criterion) {
    let mut g = c.benchmark_group("fooling_best_cut");
    g.sample_size(10);
    let f = BooleanFunction::modulo(12, 5).unwrap();
    let order = VariableOrder::natural(12);
    for (label, exec) in EXECS {
        g.bench_function(label, |b| b.iter(|| black_box(search_best_cut(&f, &order, DEFAULT_BUDGET, exec).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, verify, all_orders, fooling);
criterion_main!(benches);
