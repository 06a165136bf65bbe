//! The invariant suite behind `ccx verify`: named checks, each with a
//! verdict and prime-independent detail lines, rendered as text or JSON.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::character::Engine;
use crate::error::Result;
use crate::frobenius::higher_ext_check;
use crate::module::{ext1_dim, Module};

/// Which groups of checks to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Selection {
    pub multiplication: bool,
    pub condition_tt: bool,
    pub specialize: bool,
    /// Everything, including the index and `Φ` checks.
    pub all: bool,
}

impl Selection {
    pub fn all() -> Self {
        Selection {
            all: true,
            ..Selection::default()
        }
    }

    fn is_empty(&self) -> bool {
        !(self.multiplication || self.condition_tt || self.specialize || self.all)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub prime: u64,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub enum_cap: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        let mut out = format!(
            "prime: {}\nseed: {}\ncount primes: {}\nenum cap: {}\n",
            self.prime,
            self.seed,
            primes.join(","),
            self.enum_cap
        );
        for c in &self.checks {
            out.push_str(&format!("[{}] {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name));
            for d in &c.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!(
            "result: {} ({ok}/{} checks passed)\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }

    /// JSON with sorted keys.
    pub fn to_json(&self) -> Value {
        json!({
            "prime": self.prime,
            "seed": self.seed,
            "count_primes": self.primes,
            "enum_cap": self.enum_cap,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "details": c.details,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Number of random direct-sum pairs tested for index additivity.
pub const RANDOM_SUM_PAIRS: usize = 200;

struct Suite<'a> {
    engine: &'a Engine,
    checks: Vec<Check>,
}

impl Suite<'_> {
    fn push(&mut self, name: &'static str, run: impl FnOnce(&Engine, &mut Vec<String>) -> Result<bool>) {
        let mut details = Vec::new();
        let passed = match run(self.engine, &mut details) {
            Ok(p) => p,
            Err(e) => {
                details.push(format!("error: {e}"));
                false
            }
        };
        self.checks.push(Check { name, passed, details });
    }
}

/// Runs the selected checks. An empty selection runs everything.
pub fn run(engine: &Engine, selection: Selection) -> Report {
    let sel = if selection.is_empty() { Selection::all() } else { selection };
    let mut suite = Suite {
        engine,
        checks: Vec::new(),
    };
    if sel.all {
        structural_checks(&mut suite);
    }
    if sel.all {
        suite.push("character-on-summands", |e, d| {
            let mut ok = true;
            for (i, name) in e.tilting().names().iter().enumerate() {
                let x = e.cluster_character(name)?;
                let want = crate::laurent::LaurentPoly::var(e.tilting().n(), i);
                d.push(format!("X({name}) = {x}"));
                ok &= x == want;
            }
            Ok(ok)
        });
        suite.push("character-multiplicative", |e, d| {
            let names = e.catalog_names();
            let mut ok = true;
            for (i, a) in names.iter().enumerate() {
                for b in &names[i..] {
                    let direct = e.cluster_character_of_sum(&[a.clone(), b.clone()])?;
                    let product = e.cluster_character(a)?.mul(&e.cluster_character(b)?)?;
                    let good = direct == product;
                    if !good {
                        d.push(format!("X({a} + {b}) = {direct} but X({a}) X({b}) = {product}"));
                    }
                    ok &= good;
                }
            }
            d.push(format!("{} pairs compared", names.len() * (names.len() + 1) / 2));
            Ok(ok)
        });
        suite.push("fu-keller-prefix", |e, d| {
            let mut ok = true;
            for name in e.catalog_names() {
                let prefix = e.fu_keller_prefix(&e.module(&name)?)?;
                let index = e.index(&name)?;
                let good = prefix == index.coords();
                if !good {
                    d.push(format!("{name}: <FM,S> = {prefix:?} but ind = {index}"));
                }
                ok &= good;
            }
            Ok(ok)
        });
        suite.push("ext-module-matches-shift", |e, d| {
            let t = e.tilting();
            let mut rng = e.rng(17);
            let mut ok = true;
            for name in e.catalog_names() {
                let m = e.module(&name)?;
                let ext = t.ext_module(&m)?;
                let h = t.h_module(&crate::frobenius::suspend(&m)?).module;
                let good = crate::module::is_isomorphic(&ext, &h, &mut rng)?;
                if !good {
                    d.push(format!("{name}: Ext^1(T, M) and H(ΣM) differ"));
                }
                ok &= good;
            }
            Ok(ok)
        });
    }
    if sel.all || sel.multiplication {
        suite.push("multiplication-formula", |e, d| {
            let pairs = e.exchange_pairs();
            let mut ok = !pairs.is_empty();
            for (a, b) in pairs {
                let v = e.check_multiplication(&a, &b)?;
                d.push(format!(
                    "X({a}) X({b}) = {} ; middles {} and {} give {}",
                    v.product,
                    v.middle.join("+"),
                    v.middle_op.join("+"),
                    v.sum
                ));
                ok &= v.holds();
            }
            Ok(ok)
        });
    }
    if sel.all || sel.specialize {
        for (name, fu) in [("specialization-palu", false), ("specialization-fu-keller", true)] {
            suite.push(name, |e, d| {
                let mut ok = true;
                for obj in e.catalog_names() {
                    let v = e.check_specialization(&obj)?;
                    let lhs = if fu { &v.fu_keller } else { &v.index };
                    d.push(format!("{obj}: {lhs} vs {}", v.palu));
                    ok &= *lhs == v.palu;
                }
                Ok(ok)
            });
        }
    }
    if sel.all || sel.condition_tt {
        suite.push("characters-equal-iff-condition", |e, d| {
            let mut ok = true;
            let mut all_equal = true;
            let mut all_hold = true;
            for name in e.catalog_names() {
                let c = e.check_condition_tt(&name)?;
                if c.rows.is_empty() {
                    continue;
                }
                for r in &c.rows {
                    d.push(format!(
                        "{name}: e = {:?}, i = {}: [e:T] = {}, <e,S>_3 = {}",
                        r.class,
                        r.i + 1,
                        r.phi_value,
                        r.form_value
                    ));
                }
                let equal = e.cluster_character(&name)? == e.fu_keller_character(&name)?;
                all_equal &= equal;
                all_hold &= c.holds();
                ok &= equal == c.holds();
            }
            d.push(format!("condition holds: {all_hold}; characters equal: {all_equal}"));
            Ok(ok && all_equal == all_hold)
        });
    }
    let cfg = engine.config();
    Report {
        prime: cfg.prime,
        seed: cfg.seed,
        primes: cfg.primes.clone(),
        enum_cap: cfg.enum_cap,
        checks: suite.checks,
    }
}

/// Random direct sums of one or two catalog objects.
fn random_sum<R: Rng>(engine: &Engine, names: &[String], rng: &mut R) -> Result<(Vec<String>, Module)> {
    let k = rng.random_range(1..=2);
    let picked: Vec<String> = (0..k).map(|_| names.choose(rng).expect("nonempty catalog").clone()).collect();
    let parts = picked.iter().map(|n| engine.module(n)).collect::<Result<Vec<_>>>()?;
    let alg = engine.tilting().category().algebra().clone();
    Ok((picked, Module::direct_sum_all(alg, parts.iter())))
}

fn structural_checks(suite: &mut Suite<'_>) {
    suite.push("index-additivity-direct-sum", |e, d| {
        let t = e.tilting();
        let names = e.catalog_names();
        let mut rng = e.rng(1);
        let mut ok = true;
        for _ in 0..RANDOM_SUM_PAIRS {
            let (na, a) = random_sum(e, &names, &mut rng)?;
            let (nb, b) = random_sum(e, &names, &mut rng)?;
            let lhs = t.index(&a.direct_sum(&b))?;
            let rhs = &t.index(&a)? + &t.index(&b)?;
            if lhs != rhs {
                d.push(format!("{} + {}: {lhs} vs {rhs}", na.join("+"), nb.join("+")));
                ok = false;
            }
        }
        d.push(format!("{RANDOM_SUM_PAIRS} random pairs"));
        Ok(ok)
    });
    suite.push("stable-hom-vanishing", |e, d| {
        let bad = e.tilting().stable_hom_vanishing_failures()?;
        for (i, j) in &bad {
            d.push(format!("nonzero stable maps between T{} and ΣT{}", i + 1, j + 1));
        }
        let n = e.tilting().n();
        d.push(format!("{} pairs", n * n));
        Ok(bad.is_empty())
    });
    suite.push("ext-symmetry-and-higher-ext", |e, d| {
        let cat = e.tilting().category().catalog();
        let mut ok = true;
        for x in cat {
            for y in cat {
                let (a, b) = (ext1_dim(&x.module, &y.module), ext1_dim(&y.module, &x.module));
                if a != b {
                    d.push(format!("Ext^1({}, {}) = {a} but Ext^1({}, {}) = {b}", x.name, y.name, y.name, x.name));
                    ok = false;
                }
                for i in [2, 3] {
                    if !higher_ext_check(&x.module, &y.module, i)? {
                        d.push(format!("Ext^{i}({}, {}) does not match the stable category", x.name, y.name));
                        ok = false;
                    }
                }
            }
        }
        Ok(ok)
    });
    suite.push("theta-two-formulas", |e, d| {
        let t = e.tilting();
        let mut ok = true;
        for name in e.catalog_names() {
            let (a, b) = t.theta_both(&e.module(&name)?)?;
            d.push(format!("Theta({name}) = {a}"));
            if a != b {
                d.push(format!("  via opposite index: {b}"));
                ok = false;
            }
        }
        Ok(ok)
    });
    suite.push("phi-well-defined", |e, d| {
        let phi = e.tilting().phi();
        for j in 0..phi.r() {
            d.push(format!("Phi(S'{}) = {}", j + 1, phi.column(j)));
        }
        Ok(phi.r() == e.tilting().r())
    });
    suite.push("index-defect-formula", |e, d| {
        let t = e.tilting();
        let seqs = t.generate_sequences()?;
        let mut ok = seqs.len() >= 6;
        for (name, s) in &seqs {
            let c = t.check_index_additivity(s)?;
            if c.alternating != c.phi_side {
                d.push(format!("{name}: {} vs {}", c.alternating, c.phi_side));
                ok = false;
            }
        }
        d.push(format!("{} sequences", seqs.len()));
        Ok(ok)
    });
    suite.push("index-epi-vanishing", |e, d| {
        let t = e.tilting();
        let mut count = 0;
        let mut ok = true;
        for (name, s) in t.generate_sequences()? {
            let c = t.check_index_additivity(&s)?;
            if c.f_epi {
                count += 1;
                if !c.alternating.is_zero() {
                    d.push(format!("{name}: {}", c.alternating));
                    ok = false;
                }
            }
        }
        d.push(format!("{count} sequences with F(g) epi"));
        Ok(ok && count > 0)
    });
    suite.push("phi-descends-to-k0", |e, d| {
        let t = e.tilting();
        let mut ok = true;
        let mut count = 0;
        for (name, s) in t.generate_sequences()? {
            let theta = t.theta(&s.b)?;
            let via = t.phi().apply(&t.h_class(&s.b));
            count += 1;
            if theta != via {
                d.push(format!("middle of {name}: Theta = {theta}, Phi[H] = {via}"));
                ok = false;
            }
        }
        d.push(format!("{count} middle terms"));
        Ok(ok)
    });
    suite.push("stable-phi-formula", |e, d| {
        let t = e.tilting();
        let mut ok = true;
        for entry in t.category().catalog().iter().filter(|c| !c.projective) {
            let (l, r) = t.stable_phi_sides(&entry.module)?;
            d.push(format!("{}: {l} = {r}", entry.name));
            ok &= l == r;
        }
        Ok(ok)
    });
}
