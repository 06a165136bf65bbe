//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use ccx_core::character::{Engine, EngineConfig};
use ccx_core::fixture::Fixture;
use ccx_core::frobenius::{higher_ext_check, stable_hom, suspend};
use ccx_core::grassmann::{count_submodules_of_class, euler_char, interpolate, DEFAULT_ENUM_CAP, DEFAULT_PRIMES};
use ccx_core::k0::{K0Basis, K0Vector};
use ccx_core::laurent::{parse_laurent, LaurentPoly};
use ccx_core::module::{euler_form_3, ext1_dim, Module};
use rand::seq::IndexedRandom;
use rand::Rng;

type Outcome = Result<(), String>;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/a2_preprojective")
}

fn engine(prime: u64) -> Engine {
    let fx = Fixture::load(&fixture_dir()).expect("fixture loads");
    Engine::new(fx, EngineConfig::new(prime)).expect("fixture validates")
}

fn t(v: &[i64]) -> K0Vector {
    K0Vector::new(K0Basis::SummandsOfT, v.to_vec())
}

fn lp(s: &str) -> LaurentPoly {
    parse_laurent(3, s).expect("laurent text")
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

fn golden_run() -> Outcome {
    let start = Instant::now();
    let e = engine(101);
    let td = e.tilting();
    let b = td.endomorphism_algebra();
    ensure!(
        b.cartan_matrix().rows() == [vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]],
        "Cartan matrix {:?}",
        b.cartan_matrix().rows()
    );
    let euler = b.euler_matrix().map_err(|e| e.to_string())?.to_integer();
    let euler = euler.ok_or("Euler matrix is not integral")?;
    ensure!(
        euler.rows() == [vec![0, -1, 1], vec![1, 1, -1], vec![-1, 0, 1]],
        "Euler matrix {:?}",
        euler.rows()
    );
    let s: Vec<Module> = (0..3).map(|i| td.b_simple(i)).collect();
    let f12 = euler_form_3(&s[0], &s[1]).map_err(|e| e.to_string())?;
    let f13 = euler_form_3(&s[0], &s[2]).map_err(|e| e.to_string())?;
    ensure!((f12, f13) == (-1, 1), "<S1,S2>_3 = {f12}, <S1,S3>_3 = {f13}");
    let m = |n: &str| e.module(n).expect("catalog object");
    let theta = td.theta(&m("T1")).map_err(|e| e.to_string())?;
    ensure!(theta == t(&[0, -1, 1]), "Theta(1) = {theta}");
    let ind = td.index(&m("2")).map_err(|e| e.to_string())?;
    let op = td.op_index(&m("2")).map_err(|e| e.to_string())?;
    ensure!(ind == t(&[-1, 0, 1]), "ind(2) = {ind}");
    ensure!(op == t(&[-1, 1, 0]), "ind^op(2) = {op}");
    within(start, Duration::from_secs(5))
}

fn character_values() -> Outcome {
    let e = engine(101);
    for (i, name) in ["T1", "T2", "T3"].iter().enumerate() {
        let x = e.cluster_character(name).map_err(|e| e.to_string())?;
        ensure!(x == LaurentPoly::var(3, i), "X({name}) = {x}");
    }
    let x2 = e.cluster_character("2").map_err(|e| e.to_string())?;
    ensure!(x2 == lp("x1^-1*x2 + x1^-1*x3"), "X(2) = {x2}");
    // Exchange relation: X(1) X(2) = X(T2) + X(T3) with X(1) = x1.
    let lhs = x2.mul(&lp("x1")).map_err(|e| e.to_string())?;
    ensure!(lhs == lp("x2 + x3"), "x1 X(2) = {lhs}");
    for name in e.catalog_names() {
        let fk = e.fu_keller_character(&name).map_err(|e| e.to_string())?;
        let x = e.cluster_character(&name).map_err(|e| e.to_string())?;
        ensure!(fk == x, "{name}: Fu-Keller {fk} vs {x}");
    }
    Ok(())
}

fn multiplication() -> Outcome {
    let start = Instant::now();
    let e = engine(101);
    let pairs = e.exchange_pairs();
    let mut sorted: Vec<Vec<String>> = pairs
        .iter()
        .map(|(a, b)| {
            let mut v = vec![a.clone(), b.clone()];
            v.sort();
            v
        })
        .collect();
    sorted.sort();
    ensure!(sorted == vec![vec!["2".to_string(), "T1".to_string()]], "exchange pairs {sorted:?}");
    for (a, b) in &pairs {
        for (x, y) in [(a, b), (b, a)] {
            let v = e.check_multiplication(x, y).map_err(|e| e.to_string())?;
            ensure!(v.holds(), "{x},{y}: {} vs {}", v.product, v.sum);
        }
    }
    within(start, Duration::from_secs(1))
}

fn phi_system() -> Outcome {
    let start = Instant::now();
    let e = engine(101);
    let td = e.tilting();
    ensure!(td.phi().r() == td.r(), "Phi has {} columns", td.phi().r());
    ensure!(td.phi().column(0) == t(&[0, -1, 1]), "Phi(S'1) = {}", td.phi().column(0));
    let seqs = td.generate_sequences().map_err(|e| e.to_string())?;
    ensure!(seqs.len() >= 6, "only {} sequences", seqs.len());
    for (name, s) in &seqs {
        let c = td.check_index_additivity(s).map_err(|e| e.to_string())?;
        ensure!(c.holds(), "{name}: {} vs {}", c.alternating, c.phi_side);
    }
    within(start, Duration::from_secs(1))
}

fn specialization() -> Outcome {
    let start = Instant::now();
    let e = engine(101);
    for name in e.catalog_names() {
        let v = e.check_specialization(&name).map_err(|e| e.to_string())?;
        ensure!(v.holds(), "{name}: {} / {} / {}", v.index, v.fu_keller, v.palu);
    }
    let v = e.check_specialization("2").map_err(|e| e.to_string())?;
    ensure!(v.palu == parse_laurent(1, "2*x1^-1").unwrap(), "Palu(Σ2) = {}", v.palu);
    within(start, Duration::from_secs(1))
}

/// Lines through the origin of `F_q^2`, counted from nonzero vectors.
fn lines_in_plane(q: u64) -> u64 {
    let nonzero = (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).filter(|&v| v != (0, 0)).count() as u64;
    nonzero / (q - 1)
}

fn grassmannian_oracle() -> Outcome {
    let e = engine(101);
    let simple = |q: u64| -> ccx_core::Result<Module> {
        let w = e.world(q)?;
        Ok(Module::simple(w.stable_endomorphism_algebra().clone(), 0))
    };
    let chi = euler_char(simple, &[1], &DEFAULT_PRIMES, DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?;
    ensure!(chi.euler_characteristic() == 1, "chi(S'1) = {}", chi.euler_characteristic());
    let square = |q: u64| -> ccx_core::Result<Module> {
        let s = simple(q)?;
        Ok(s.direct_sum(&s))
    };
    let mut points = Vec::new();
    for q in DEFAULT_PRIMES {
        let m = square(q).map_err(|e| e.to_string())?;
        let c = count_submodules_of_class(&m, &[1], DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?;
        ensure!(c == q + 1 && c == lines_in_plane(q), "count at q = {q} is {c}");
        points.push((q, c));
    }
    let poly = interpolate(&points, 1).map_err(|e| e.to_string())?;
    ensure!(poly.coefficients == vec![1, 1], "polynomial {:?}", poly.coefficients);
    let chi = euler_char(square, &[1], &DEFAULT_PRIMES, DEFAULT_ENUM_CAP).map_err(|e| e.to_string())?;
    ensure!(chi.euler_characteristic() == 2, "chi = {}", chi.euler_characteristic());
    Ok(())
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let e = engine(101);
    let td = e.tilting();
    let names = e.catalog_names();
    let alg = td.category().algebra().clone();
    let mut rng = e.rng(99);
    let random_sum = |rng: &mut rand_chacha::ChaCha8Rng| {
        let k = rng.random_range(1..=3);
        let parts: Vec<Module> = (0..k).map(|_| e.module(names.choose(rng).unwrap()).unwrap()).collect();
        Module::direct_sum_all(alg.clone(), parts.iter())
    };
    for _ in 0..200 {
        let a = random_sum(&mut rng);
        let b = random_sum(&mut rng);
        let lhs = td.index(&a.direct_sum(&b)).map_err(|e| e.to_string())?;
        let rhs = &td.index(&a).map_err(|e| e.to_string())? + &td.index(&b).map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "index of sum {lhs} vs {rhs}");
    }
    let cat = td.category().catalog();
    for c in cat {
        let (a, b) = td.theta_both(&c.module).map_err(|e| e.to_string())?;
        ensure!(a == b, "Theta({}) = {a} vs {b}", c.name);
    }
    let shifted: Vec<Module> = td.summands().iter().map(|m| suspend(m).unwrap()).collect();
    for (i, ti) in td.summands().iter().enumerate() {
        for (j, tj) in td.summands().iter().enumerate() {
            let a = stable_hom(ti, &shifted[j]).map_err(|e| e.to_string())?.dim();
            let b = stable_hom(&shifted[i], tj).map_err(|e| e.to_string())?.dim();
            ensure!(a == 0 && b == 0, "stable maps between T{} and ΣT{}", i + 1, j + 1);
        }
    }
    for x in cat {
        for y in cat {
            let (a, b) = (ext1_dim(&x.module, &y.module), ext1_dim(&y.module, &x.module));
            ensure!(a == b, "Ext^1({}, {}) = {a}, reverse {b}", x.name, y.name);
            for i in [2, 3] {
                let ok = higher_ext_check(&x.module, &y.module, i).map_err(|e| e.to_string())?;
                ensure!(ok, "higher Ext {i} for ({}, {})", x.name, y.name);
            }
        }
    }
    within(start, Duration::from_secs(30))
}

fn ccx(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ccx"))
        .arg("--fixture")
        .arg(fixture_dir())
        .args(args)
        .output()
        .expect("ccx runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn without_prime(text: &[u8]) -> String {
    String::from_utf8_lossy(text)
        .lines()
        .filter(|l| !l.starts_with("prime:") && !l.trim_start().starts_with("\"prime\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn determinism() -> Outcome {
    let (a, ca) = ccx(&["--seed", "7", "--prime", "101", "verify", "--all"]);
    let (b, cb) = ccx(&["--seed", "7", "--prime", "101", "verify", "--all"]);
    ensure!(ca == 0 && cb == 0, "verify exit codes {ca}, {cb}");
    ensure!(a == b, "reports differ between identical runs");
    let (j1, _) = ccx(&["--seed", "7", "--json", "verify", "--all"]);
    let (j2, _) = ccx(&["--seed", "7", "--json", "verify", "--all"]);
    ensure!(j1 == j2, "JSON reports differ between identical runs");
    let (c, cc) = ccx(&["--seed", "7", "--prime", "211", "verify", "--all"]);
    ensure!(cc == 0, "verify at 211 exit code {cc}");
    ensure!(without_prime(&a) == without_prime(&c), "reports at 101 and 211 differ");
    let commands: [&[&str]; 7] = [
        &["index"],
        &["theta"],
        &["phi"],
        &["character", "2"],
        &["character", "2", "--formula", "fu"],
        &["character", "T1", "--formula", "palu"],
        &["catalog"],
    ];
    for cmd in commands {
        let at = |p: &str| {
            let mut args = vec!["--prime", p];
            args.extend_from_slice(cmd);
            ccx(&args)
        };
        let (x, cx) = at("101");
        let (y, cy) = at("211");
        ensure!(cx == 0 && cy == 0 && x == y, "{cmd:?} differs between primes");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden run", golden_run),
        ("character values", character_values),
        ("multiplication", multiplication),
        ("phi system", phi_system),
        ("specialization", specialization),
        ("grassmannian oracle", grassmannian_oracle),
        ("property suites", property_suites),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS {name} ({secs:.3} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.3} s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
