use std::path::PathBuf;
use std::sync::Arc;

use ccx_core::algebra::{build_algebra, Quiver, Relation};
use ccx_core::character::{Engine, EngineConfig};
use ccx_core::fixture::Fixture;
use ccx_core::grassmann::count_submodules;
use ccx_core::matrix::Matrix;
use ccx_core::module::{decompose, Module};
use ccx_core::verify::{self, Selection};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture() -> Fixture {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/a2_preprojective");
    Fixture::load(&dir).expect("fixture")
}

fn a3_preprojective(p: u64) -> Arc<ccx_core::Algebra> {
    let q = Quiver::new(
        vec!["1", "2", "3"],
        vec![("a", "1", "2"), ("a*", "2", "1"), ("b", "2", "3"), ("b*", "3", "2")],
    )
    .unwrap();
    let rels = vec![
        Relation::monomial(vec!["a*", "a"]),
        Relation::new(vec![(vec!["a", "a*"], 1), (vec!["b*", "b"], 1)]),
        Relation::monomial(vec!["b", "b*"]),
    ];
    Arc::new(build_algebra(&q, &rels, p).unwrap())
}

fn linear_algebra(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let data: Vec<u64> = (0..64 * 64).map(|_| rng.random_range(0..101)).collect();
    let m = Matrix::from_rows_raw(101, 64, 64, data);
    c.bench_function("rref 64x64 over F_101", |b| b.iter(|| m.rref()));
}

fn algebra_and_modules(c: &mut Criterion) {
    c.bench_function("build A3 preprojective", |b| b.iter(|| a3_preprojective(101)));
    let alg = a3_preprojective(101);
    let sum = Module::direct_sum_all(alg.clone(), (0..3).map(|v| Module::projective(alg.clone(), v)).collect::<Vec<_>>().iter());
    c.bench_function("decompose regular A3 preprojective module", |b| {
        b.iter(|| decompose(&sum, &mut ChaCha8Rng::seed_from_u64(1)).unwrap())
    });
    let alg5 = a3_preprojective(5);
    let p2 = Module::projective(alg5, 1);
    c.bench_function("count submodules of P2 over F_5", |b| b.iter(|| count_submodules(&p2, 8).unwrap()));
}

fn engine(c: &mut Criterion) {
    c.bench_function("instantiate fixture", |b| {
        b.iter(|| fixture().instantiate(101, &mut ChaCha8Rng::seed_from_u64(0)).unwrap())
    });
    c.bench_function("verify --all", |b| {
        b.iter(|| {
            let e = Engine::new(fixture(), EngineConfig::new(101)).unwrap();
            assert!(verify::run(&e, Selection::all()).passed());
        })
    });
}

criterion_group!(benches, linear_algebra, algebra_and_modules, engine);
criterion_main!(benches);
