use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flagcoh_core::fgl::FormalGroupLaw;
use flagcoh_core::fgring::FormalGroupRing;
use flagcoh_core::flagring::{FlagBasis, MultiplicationTable};
use flagcoh_core::par::Execution;
use flagcoh_core::rootdata::RootDatum;

fn table(c: &mut Criterion) {
    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    for name in ["A2", "B2"] {
        let datum = Arc::new(RootDatum::named(name).unwrap());
        let trunc = 2 * datum.n_positive() as u32 + 1;
        let ring = Arc::new(FormalGroupRing::new(datum, Arc::new(FormalGroupLaw::universal(trunc).unwrap())));
        ring.prepare();
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), name), &exec, |b, &exec| {
                b.iter(|| {
                    let fb = FlagBasis::new(ring.clone(), exec).unwrap();
                    MultiplicationTable::build(&fb, "universal", true, true).unwrap()
                });
            });
        }
    }
    group.finish();
}

criterion_group!(benches, table);
criterion_main!(benches);
