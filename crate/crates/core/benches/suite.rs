use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use stratihom::algebra::Coefficients;
use stratihom::blowup::BlowupComplex;
use stratihom::parallel::Execution;
use stratihom::perversity::Perversity;
use stratihom::recipe::Recipe;

const SPACES: &[&str] = &["cone(torus)", "join_sphere(1,circle(6))", "product_cube(1,cone(circle(6)))"];

fn blowup(c: &mut Criterion) {
    let mut group = c.benchmark_group("blowup");
    group.sample_size(10);
    for recipe in SPACES {
        let s = recipe.parse::<Recipe>().unwrap().evaluate().unwrap();
        let x = &s.complex;
        let p = Perversity::zero(x);
        for (name, exec) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
            group.bench_with_input(BenchmarkId::new(name, recipe), &exec, |b, &exec| {
                b.iter(|| {
                    let bx = BlowupComplex::with(x, exec);
                    let c = bx.perverse_complex_with(x, &p, Coefficients::Integers, exec).unwrap();
                    black_box(c.complex.homology_with(exec).unwrap())
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, blowup);
criterion_main!(benches);
