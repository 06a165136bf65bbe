//! The three cluster characters and the statements comparing them.
//!
//! Point counts need the category over several prime fields, so the
//! [`Engine`] rebuilds the fixture over each `F_q` on demand and caches it.
//! Catalog objects are identified across primes by name.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::check_prime;
use crate::fixture::Fixture;
use crate::frobenius::suspend;
use crate::grassmann::{euler_characteristics, CountingPolynomial, DEFAULT_ENUM_CAP, DEFAULT_PRIMES};
use crate::k0::K0Vector;
use crate::laurent::LaurentPoly;
use crate::module::{decompose, euler_form_1, euler_form_3, ext1, extension_middle, indecomposables_isomorphic, syzygy, Module};
use crate::tilting::TiltingData;

/// Which character to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// `𝕏^T`, with exponents from the index and `Φ`.
    Index,
    /// Fu–Keller, with exponents from `⟨ , ⟩_3`.
    FuKeller,
    /// Palu, on the stable category in `x_1..x_r`.
    Palu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub prime: u64,
    /// Primes used for point counts; extended automatically when short.
    pub primes: Vec<u64>,
    pub enum_cap: usize,
    pub seed: u64,
}

impl EngineConfig {
    pub fn new(prime: u64) -> Self {
        EngineConfig {
            prime,
            primes: DEFAULT_PRIMES.to_vec(),
            enum_cap: DEFAULT_ENUM_CAP,
            seed: 0,
        }
    }
}

/// Outcome of comparing `𝕏_N 𝕏_M` with `𝕏_L + 𝕏_{L'}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationVerdict {
    pub n: String,
    pub m: String,
    /// Catalog summands of the two middle terms.
    pub middle: Vec<String>,
    pub middle_op: Vec<String>,
    pub product: LaurentPoly,
    pub sum: LaurentPoly,
}

impl MultiplicationVerdict {
    pub fn holds(&self) -> bool {
        self.product == self.sum
    }
}

/// One comparison `[e:T_i] = ⟨e, S_i⟩_3` for a projective index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionRow {
    pub class: Vec<usize>,
    pub i: usize,
    pub phi_value: i64,
    pub form_value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub object: String,
    pub rows: Vec<ConditionRow>,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.phi_value == r.form_value)
    }
}

/// The three characters of one object after setting `x_{r+1}..x_n` to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationVerdict {
    pub object: String,
    pub index: LaurentPoly,
    pub fu_keller: LaurentPoly,
    /// Palu's character of `ΣM`.
    pub palu: LaurentPoly,
}

impl SpecializationVerdict {
    pub fn holds(&self) -> bool {
        self.index == self.palu && self.fu_keller == self.palu
    }
}

pub struct Engine {
    fixture: Fixture,
    config: EngineConfig,
    main: Arc<TiltingData>,
    worlds: Mutex<BTreeMap<u64, Arc<TiltingData>>>,
    characters: Mutex<BTreeMap<(Formula, String), LaurentPoly>>,
    /// `⟨S_j, S_i⟩_3` over `B`.
    form3: Vec<Vec<i64>>,
    /// `⟨S'_i, S'_j⟩_a` over `C`.
    form_a: Vec<Vec<i64>>,
}

impl Engine {
    /// Instantiates the fixture over the main prime, validating it.
    pub fn new(fixture: Fixture, config: EngineConfig) -> Result<Engine> {
        check_prime(config.prime)?;
        for &q in &config.primes {
            check_prime(q)?;
        }
        let main = Arc::new(build_world(&fixture, config.prime, config.seed)?);
        let n = main.n();
        let r = main.r();
        let simples: Vec<Module> = (0..n).map(|i| main.b_simple(i)).collect();
        let mut form3 = vec![vec![0; n]; n];
        for j in 0..n {
            for i in 0..n {
                form3[j][i] = euler_form_3(&simples[j], &simples[i])?;
            }
        }
        let c = main.stable_endomorphism_algebra();
        let c_simples: Vec<Module> = (0..r).map(|i| Module::simple(c.clone(), i)).collect();
        let mut form1 = vec![vec![0; r]; r];
        for i in 0..r {
            for j in 0..r {
                form1[i][j] = euler_form_1(&c_simples[i], &c_simples[j])?;
            }
        }
        let form_a = (0..r).map(|i| (0..r).map(|j| form1[i][j] - form1[j][i]).collect()).collect();
        let mut worlds = BTreeMap::new();
        worlds.insert(config.prime, main.clone());
        Ok(Engine {
            fixture,
            config,
            main,
            worlds: Mutex::new(worlds),
            characters: Mutex::new(BTreeMap::new()),
            form3,
            form_a,
        })
    }

    pub fn fixture(&self) -> &Fixture {
        &self.fixture
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Tilting data over the main prime.
    pub fn tilting(&self) -> &TiltingData {
        &self.main
    }

    /// Tilting data over `F_q`, built once per prime.
    pub fn world(&self, q: u64) -> Result<Arc<TiltingData>> {
        let mut worlds = self.worlds.lock().expect("world cache");
        if let Some(w) = worlds.get(&q) {
            return Ok(w.clone());
        }
        let w = Arc::new(build_world(&self.fixture, q, self.config.seed)?);
        worlds.insert(q, w.clone());
        Ok(w)
    }

    /// A fresh generator, deterministic in the seed and `salt`.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    pub fn catalog_names(&self) -> Vec<String> {
        self.main.category().catalog().iter().map(|e| e.name.clone()).collect()
    }

    pub fn module(&self, name: &str) -> Result<Module> {
        Ok(self.main.category().get(name)?.module.clone())
    }

    /// `⟨S_j, S_i⟩_3` for simple `B`-modules.
    pub fn form3(&self) -> &[Vec<i64>] {
        &self.form3
    }

    /// `⟨e, S_i⟩_3` for a class `e` of `K_0(mod C)`, through the
    /// semisimple `C`-module of that class.
    pub fn form3_on_class(&self, e: &[usize], i: usize) -> i64 {
        e.iter().enumerate().map(|(j, &x)| x as i64 * self.form3[j][i]).sum()
    }

    /// Euler characteristics of the Grassmannians of `object(world)`.
    fn grassmannians<F>(&self, object: F) -> Result<BTreeMap<Vec<usize>, CountingPolynomial>>
    where
        F: Fn(&TiltingData) -> Result<Module> + Sync,
    {
        euler_characteristics(|q| object(&*self.world(q)?), &self.config.primes, self.config.enum_cap)
    }

    fn cached(&self, formula: Formula, name: &str, compute: impl FnOnce() -> Result<LaurentPoly>) -> Result<LaurentPoly> {
        let key = (formula, name.to_string());
        if let Some(c) = self.characters.lock().expect("character cache").get(&key) {
            return Ok(c.clone());
        }
        let value = compute()?;
        self.characters.lock().expect("character cache").insert(key, value.clone());
        Ok(value)
    }

    /// A catalog character by formula.
    pub fn character(&self, formula: Formula, name: &str) -> Result<LaurentPoly> {
        match formula {
            Formula::Index => self.cluster_character(name),
            Formula::FuKeller => self.fu_keller_character(name),
            Formula::Palu => self.palu_character(name),
        }
    }

    /// `𝕏^T_M = x^{ind M} Σ_e χ(Gr_e(H(ΣM))) x^{-Φ(e)}`.
    pub fn cluster_character(&self, name: &str) -> Result<LaurentPoly> {
        self.cached(Formula::Index, name, || {
            let m = self.module(name)?;
            let t = &self.main;
            let prefix = t.index(&m)?;
            let chis = self.grassmannians(|w| Ok(w.h_module(&suspend(&w.category().get(name)?.module)?).module))?;
            let mut out = LaurentPoly::zero(t.n());
            for (e, poly) in &chis {
                let chi = poly.euler_characteristic();
                let class: Vec<i64> = e.iter().map(|&x| x as i64).collect();
                let exp = &prefix - &t.phi().apply(&class);
                out = out.add(&LaurentPoly::monomial(exp.coords().to_vec(), chi))?;
            }
            Ok(out)
        })
    }

    /// `⟨F M, S_i⟩ = dim Hom_B(FM, S_i) - dim Ext^1_B(FM, S_i)`.
    pub fn fu_keller_prefix(&self, m: &Module) -> Result<Vec<i64>> {
        let t = &self.main;
        let fm = t.f_module(m).module;
        (0..t.n()).map(|i| euler_form_1(&fm, &t.b_simple(i))).collect()
    }

    /// `X'^T_M = x^{⟨FM, S⟩} Σ_e χ(Gr_e(Ext^1(T, M))) x^{-⟨e, S⟩_3}`.
    pub fn fu_keller_character(&self, name: &str) -> Result<LaurentPoly> {
        self.cached(Formula::FuKeller, name, || {
            let m = self.module(name)?;
            let n = self.main.n();
            let prefix = self.fu_keller_prefix(&m)?;
            let chis = self.grassmannians(|w| w.ext_module(&w.category().get(name)?.module))?;
            let mut out = LaurentPoly::zero(n);
            for (e, poly) in &chis {
                let exp: Vec<i64> = (0..n).map(|i| prefix[i] - self.form3_on_class(e, i)).collect();
                out = out.add(&LaurentPoly::monomial(exp, poly.euler_characteristic()))?;
            }
            Ok(out)
        })
    }

    /// Palu's character of a catalog object viewed in the stable category:
    /// `x_i` if `M ≅ ΣT_i`, otherwise
    /// `x^{-coind M} Σ_e χ(Gr_e(H(M))) x^{⟨S_i, e⟩_a}`.
    pub fn palu_character(&self, name: &str) -> Result<LaurentPoly> {
        self.cached(Formula::Palu, name, || {
            let m = self.module(name)?;
            let t = &self.main;
            let r = t.r();
            for i in 0..r {
                let shifted = suspend(&t.summands()[i])?;
                if indecomposables_isomorphic(&shifted, &m) {
                    return Ok(LaurentPoly::var(r, i));
                }
            }
            let prefix = t.stable_index(&syzygy(&m))?;
            let chis = self.grassmannians(|w| Ok(w.h_module(&w.category().get(name)?.module).module))?;
            let mut out = LaurentPoly::zero(r);
            for (e, poly) in &chis {
                let exp: Vec<i64> = (0..r)
                    .map(|i| prefix.coords()[i] + (0..r).map(|j| e[j] as i64 * self.form_a[i][j]).sum::<i64>())
                    .collect();
                out = out.add(&LaurentPoly::monomial(exp, poly.euler_characteristic()))?;
            }
            Ok(out)
        })
    }

    /// `𝕏^T` of a direct sum of catalog objects, computed from the sum
    /// itself rather than from its summands.
    pub fn cluster_character_of_sum(&self, names: &[String]) -> Result<LaurentPoly> {
        let sum_at = |w: &TiltingData| -> Result<Module> {
            let parts = names
                .iter()
                .map(|n| Ok(w.category().get(n)?.module.clone()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Module::direct_sum_all(w.category().algebra().clone(), parts.iter()))
        };
        let t = &self.main;
        let prefix = t.index(&sum_at(t)?)?;
        let chis = self.grassmannians(|w| Ok(w.h_module(&suspend(&sum_at(w)?)?).module))?;
        let mut out = LaurentPoly::zero(t.n());
        for (e, poly) in &chis {
            let class: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            let exp = &prefix - &t.phi().apply(&class);
            out = out.add(&LaurentPoly::monomial(exp.coords().to_vec(), poly.euler_characteristic()))?;
        }
        Ok(out)
    }

    /// Catalog names of the indecomposable summands of `m`, sorted.
    pub fn summands_in_catalog(&self, m: &Module) -> Result<Vec<String>> {
        if m.is_zero() {
            return Ok(Vec::new());
        }
        let mut rng = self.rng(m.dim() as u64);
        let cat = self.main.category();
        let mut names = Vec::new();
        for part in decompose(m, &mut rng)? {
            let i = cat
                .find_isomorphic(&part)
                .ok_or_else(|| Error::NotInCatalog(format!("module with dimension vector {:?}", m.dims())))?;
            names.push(cat.catalog()[i].name.clone());
        }
        names.sort();
        Ok(names)
    }

    /// Character of an arbitrary module, multiplied over its summands.
    pub fn character_of(&self, formula: Formula, m: &Module) -> Result<LaurentPoly> {
        let nvars = match formula {
            Formula::Palu => self.main.r(),
            _ => self.main.n(),
        };
        let mut out = LaurentPoly::one(nvars);
        for name in self.summands_in_catalog(m)? {
            out = out.mul(&self.character(formula, &name)?)?;
        }
        Ok(out)
    }

    /// Exchange check for a pair with one-dimensional `Ext^1`.
    pub fn check_multiplication(&self, n_name: &str, m_name: &str) -> Result<MultiplicationVerdict> {
        let n = self.module(n_name)?;
        let m = self.module(m_name)?;
        let forward = ext1(&n, &m)?;
        let backward = ext1(&m, &n)?;
        for (space, a, b) in [(&forward, n_name, m_name), (&backward, m_name, n_name)] {
            if space.dim() != 1 {
                return Err(Error::ExtNotOneDimensional {
                    n: a.to_string(),
                    m: b.to_string(),
                    dim: space.dim(),
                });
            }
        }
        let l = extension_middle(&forward.basis()[0])?.b;
        let l_op = extension_middle(&backward.basis()[0])?.b;
        let product = self.cluster_character(n_name)?.mul(&self.cluster_character(m_name)?)?;
        let sum = self
            .character_of(Formula::Index, &l)?
            .add(&self.character_of(Formula::Index, &l_op)?)?;
        Ok(MultiplicationVerdict {
            n: n_name.to_string(),
            m: m_name.to_string(),
            middle: self.summands_in_catalog(&l)?,
            middle_op: self.summands_in_catalog(&l_op)?,
            product,
            sum,
        })
    }

    /// Unordered catalog pairs with one-dimensional `Ext^1`.
    pub fn exchange_pairs(&self) -> Vec<(String, String)> {
        let cat = self.main.category().catalog();
        let mut out = Vec::new();
        for (i, x) in cat.iter().enumerate() {
            for y in &cat[i..] {
                if crate::module::ext1_dim(&x.module, &y.module) == 1 {
                    out.push((x.name.clone(), y.name.clone()));
                }
            }
        }
        out
    }

    /// Compares `[e:T_i]` with `⟨e, S_i⟩_3` for projective indices `i` over
    /// the submodule classes of `Ext^1(T, M)`. Objects in `add T` give an
    /// empty verdict.
    pub fn check_condition_tt(&self, name: &str) -> Result<ConditionVerdict> {
        let t = &self.main;
        let m = self.module(name)?;
        let mut rows = Vec::new();
        if t.summand_index(&m).is_none() {
            let chis = self.grassmannians(|w| w.ext_module(&w.category().get(name)?.module))?;
            for e in chis.keys() {
                let class: Vec<i64> = e.iter().map(|&x| x as i64).collect();
                let phi = t.phi().apply(&class);
                for i in t.r()..t.n() {
                    rows.push(ConditionRow {
                        class: e.clone(),
                        i,
                        phi_value: phi.coords()[i],
                        form_value: self.form3_on_class(e, i),
                    });
                }
            }
        }
        Ok(ConditionVerdict {
            object: name.to_string(),
            rows,
        })
    }

    /// `𝕏_M` and `X'_M` at `x_{r+1} = .. = x_n = 1` against Palu's `X_{ΣM}`.
    pub fn check_specialization(&self, name: &str) -> Result<SpecializationVerdict> {
        let r = self.main.r();
        let shifted = suspend(&self.module(name)?)?;
        Ok(SpecializationVerdict {
            object: name.to_string(),
            index: self.cluster_character(name)?.specialize_tail(r),
            fu_keller: self.fu_keller_character(name)?.specialize_tail(r),
            palu: self.character_of(Formula::Palu, &shifted)?,
        })
    }

    /// Index of a catalog object.
    pub fn index(&self, name: &str) -> Result<K0Vector> {
        self.main.index(&self.module(name)?)
    }
}

fn build_world(fixture: &Fixture, q: u64, seed: u64) -> Result<TiltingData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(q));
    fixture.instantiate(q, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;

    pub(crate) fn engine() -> Engine {
        let cat = r#"{"algebra": "a", "modules": [], "tilting": ["T1", "T2", "T3"]}"#;
        let alg = r#"{"vertices": ["1", "2"],
            "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "1"}],
            "relations": [[{"path": ["b", "a"], "coeff": 1}], [{"path": ["a", "b"], "coeff": 1}]]}"#;
        let mods = [
            r#"{"name": "2", "dims": {"2": 1}}"#,
            r#"{"name": "T1", "dims": {"1": 1}}"#,
            r#"{"name": "T2", "dims": {"1": 1, "2": 1}, "action": {"a": [[1]]}}"#,
            r#"{"name": "T3", "dims": {"1": 1, "2": 1}, "action": {"b": [[1]]}}"#,
        ];
        Engine::new(Fixture::from_json(cat, alg, &mods).unwrap(), EngineConfig::new(101)).unwrap()
    }

    fn lp(n: usize, s: &str) -> LaurentPoly {
        parse_laurent(n, s).unwrap()
    }

    #[test]
    fn characters_of_the_fixture() {
        let e = engine();
        for (i, name) in ["T1", "T2", "T3"].iter().enumerate() {
            assert_eq!(e.cluster_character(name).unwrap(), LaurentPoly::var(3, i));
        }
        let x2 = e.cluster_character("2").unwrap();
        assert_eq!(x2, lp(3, "x1^-1*x2 + x1^-1*x3"));
        // Exchange relation against x1 = 𝕏_{T1}.
        assert_eq!(x2.mul(&LaurentPoly::var(3, 0)).unwrap(), lp(3, "x2 + x3"));
        for name in e.catalog_names() {
            assert_eq!(e.fu_keller_character(&name).unwrap(), e.cluster_character(&name).unwrap(), "{name}");
        }
    }

    #[test]
    fn palu_values() {
        let e = engine();
        assert_eq!(e.palu_character("2").unwrap(), lp(1, "x1"));
        assert_eq!(e.palu_character("T1").unwrap(), lp(1, "2*x1^-1"));
        assert_eq!(e.palu_character("T2").unwrap(), LaurentPoly::one(1));
    }

    #[test]
    fn multiplication_and_conditions() {
        let e = engine();
        let pairs = e.exchange_pairs();
        assert_eq!(pairs, vec![("2".to_string(), "T1".to_string())]);
        let v = e.check_multiplication("T1", "2").unwrap();
        assert!(v.holds());
        let mut mids = vec![v.middle.clone(), v.middle_op.clone()];
        mids.sort();
        assert_eq!(mids, vec![vec!["T2".to_string()], vec!["T3".to_string()]]);
        assert!(matches!(e.check_multiplication("T1", "T2"), Err(Error::ExtNotOneDimensional { .. })));
        let c = e.check_condition_tt("2").unwrap();
        assert!(c.holds());
        let row = |i| c.rows.iter().find(|r| r.class == vec![1] && r.i == i).unwrap().form_value;
        assert_eq!((row(1), row(2)), (-1, 1));
        for name in e.catalog_names() {
            assert!(e.check_specialization(&name).unwrap().holds(), "{name}");
        }
    }

    #[test]
    fn direct_sums_multiply() {
        let e = engine();
        let m = e.module("T2").unwrap().direct_sum(&e.module("2").unwrap());
        assert_eq!(
            e.character_of(Formula::Index, &m).unwrap(),
            lp(3, "x1^-1*x2^2 + x1^-1*x2*x3")
        );
        let names = vec!["T2".to_string(), "2".to_string()];
        assert_eq!(
            e.cluster_character_of_sum(&names).unwrap(),
            e.character_of(Formula::Index, &m).unwrap()
        );
        assert_eq!(e.fu_keller_prefix(&e.module("2").unwrap()).unwrap(), vec![-1, 0, 1]);
    }
}
