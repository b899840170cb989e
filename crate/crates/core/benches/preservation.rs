use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use monadpreserve::monads::Monad;
use monadpreserve::par;
use monadpreserve::preserve::{check_preservation, CheckOptions};
use monadpreserve::terms::{parse_equation, Signature};

fn modes(c: &mut Criterion) {
    let sig = Signature::new([("m", 2)]).unwrap();
    let cases = [
        (
            "multiset:f2",
            "m(x,m(y,y)) = m(y,x)",
            CheckOptions::exhaustive(3),
        ),
        ("powerset", "m(x,y) = m(y,x)", CheckOptions::exhaustive(3)),
        (
            "dist",
            "m(m(x,y),z) = m(x,m(y,z))",
            CheckOptions::randomized(3, 20, 1),
        ),
    ];
    let mut group = c.benchmark_group("check_preservation");
    group.sample_size(10);
    for (sel, src, opts) in &cases {
        let t = Monad::from_selector(sel).unwrap();
        let eq = parse_equation(src, &sig).unwrap();
        for parallel in [true, false] {
            let mode = if parallel { "parallel" } else { "sequential" };
            group.bench_with_input(BenchmarkId::new(mode, sel), &eq, |b, eq| {
                par::set_parallel(parallel);
                b.iter(|| check_preservation(&t, &sig, eq, opts).unwrap());
            });
        }
    }
    par::set_parallel(true);
    group.finish();
}

criterion_group!(benches, modes);
criterion_main!(benches);
