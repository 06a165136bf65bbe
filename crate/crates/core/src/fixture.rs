//! Fixture loading. A fixture directory holds `category.json`, which names
//! an algebra file, module files and the summands of `T`. The raw data is
//! kept independent of the prime so the same fixture can be instantiated
//! over any `F_q`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::Rng;
use serde::Deserialize;

use crate::algebra::{build_algebra, Algebra, Quiver, Relation};
use crate::error::{Error, Result};
use crate::field::{check_prime, reduce_i64};
use crate::frobenius::FrobeniusCategory;
use crate::matrix::Matrix;
use crate::module::Module;
use crate::tilting::TiltingData;

/// Prime used when neither the command line nor the algebra file sets one.
pub const DEFAULT_PRIME: u64 = 101;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryFile {
    algebra: String,
    modules: Vec<String>,
    tilting: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowFile {
    name: String,
    from: String,
    to: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    path: Vec<String>,
    coeff: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    vertices: Vec<String>,
    arrows: Vec<ArrowFile>,
    #[serde(default)]
    relations: Vec<Vec<TermFile>>,
    prime: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    name: String,
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    action: BTreeMap<String, Vec<Vec<i64>>>,
}

/// A module given by integer arrow matrices, indexed like the quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub name: String,
    pub dims: Vec<usize>,
    /// Row-major integer matrix for each arrow, `dims[to] × dims[from]`.
    pub arrows: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub dir: Option<PathBuf>,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// Prime from the algebra file, if any.
    pub prime: Option<u64>,
    pub modules: Vec<ModuleSpec>,
    pub tilting: Vec<String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| Error::Json {
        path: path.to_string(),
        source,
    })
}

impl Fixture {
    /// Loads `DIR/category.json` and the files it references.
    pub fn load(dir: &Path) -> Result<Fixture> {
        let cat_path = dir.join("category.json");
        let cat: CategoryFile = parse(&read(&cat_path)?, &cat_path.display().to_string())?;
        let alg_path = dir.join(&cat.algebra);
        let alg_text = read(&alg_path)?;
        let modules = cat
            .modules
            .iter()
            .map(|f| {
                let path = dir.join(f);
                Ok((path.display().to_string(), read(&path)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut fx = Fixture::assemble(cat, (&alg_path.display().to_string(), &alg_text), &modules)?;
        fx.dir = Some(dir.to_path_buf());
        Ok(fx)
    }

    /// Builds a fixture from JSON texts: the category file, the algebra
    /// file and each module file. Referenced file names are not resolved.
    pub fn from_json(category: &str, algebra: &str, modules: &[&str]) -> Result<Fixture> {
        let cat: CategoryFile = parse(category, "category")?;
        let named: Vec<(String, String)> = modules
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("module #{i}"), m.to_string()))
            .collect();
        Fixture::assemble(cat, ("algebra", algebra), &named)
    }

    fn assemble(cat: CategoryFile, algebra: (&str, &str), modules: &[(String, String)]) -> Result<Fixture> {
        let alg: AlgebraFile = parse(algebra.1, algebra.0)?;
        let quiver = Quiver::new(
            alg.vertices.clone(),
            alg.arrows.iter().map(|a| (a.name.clone(), a.from.clone(), a.to.clone())).collect(),
        )?;
        let relations = alg
            .relations
            .into_iter()
            .map(|terms| Relation::new(terms.into_iter().map(|t| (t.path, t.coeff)).collect()))
            .collect();
        if let Some(p) = alg.prime {
            check_prime(p)?;
        }
        let mut specs: Vec<ModuleSpec> = Vec::new();
        for (path, text) in modules {
            let m: ModuleFile = parse(text, path)?;
            let spec = module_spec(&quiver, m)?;
            if specs.iter().any(|s| s.name == spec.name) {
                return Err(Error::Fixture(format!("module name {} is used twice", spec.name)));
            }
            specs.push(spec);
        }
        for t in &cat.tilting {
            if !specs.iter().any(|s| &s.name == t) {
                return Err(Error::Fixture(format!("tilting summand {t} is not a listed module")));
            }
        }
        if cat.tilting.is_empty() {
            return Err(Error::Fixture("the tilting list is empty".into()));
        }
        Ok(Fixture {
            dir: None,
            quiver,
            relations,
            prime: alg.prime,
            modules: specs,
            tilting: cat.tilting,
        })
    }

    /// The prime to use when none is requested explicitly.
    pub fn default_prime(&self) -> u64 {
        self.prime.unwrap_or(DEFAULT_PRIME)
    }

    pub fn algebra(&self, p: u64) -> Result<Arc<Algebra>> {
        Ok(Arc::new(build_algebra(&self.quiver, &self.relations, p)?))
    }

    /// The catalog module `spec` over `alg`.
    pub fn module(&self, alg: &Arc<Algebra>, spec: &ModuleSpec) -> Result<Module> {
        let p = alg.prime();
        let mats: Vec<Matrix> = self
            .quiver
            .arrows()
            .iter()
            .zip(&spec.arrows)
            .map(|(a, rows)| {
                let (r, c) = (spec.dims[a.target], spec.dims[a.source]);
                let mut m = Matrix::zeros(r, c, p);
                for (i, row) in rows.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        m.set(i, j, reduce_i64(x, p));
                    }
                }
                m
            })
            .collect();
        Module::from_arrow_matrices(alg.clone(), spec.dims.clone(), &mats).map_err(|e| match e {
            Error::InvalidModule { reason, .. } => Error::InvalidModule {
                name: spec.name.clone(),
                reason,
            },
            other => other,
        })
    }

    pub fn spec(&self, name: &str) -> Result<&ModuleSpec> {
        self.modules
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownModule(name.to_string()))
    }

    /// The validated Frobenius category over `F_p`.
    pub fn category<R: Rng + ?Sized>(&self, p: u64, rng: &mut R) -> Result<FrobeniusCategory> {
        check_prime(p)?;
        let alg = self.algebra(p)?;
        let entries = self
            .modules
            .iter()
            .map(|s| Ok((s.name.clone(), self.module(&alg, s)?)))
            .collect::<Result<Vec<_>>>()?;
        FrobeniusCategory::new(alg, entries, rng)
    }

    /// Category, tilting data and `Φ` over `F_p`.
    pub fn instantiate<R: Rng + ?Sized>(&self, p: u64, rng: &mut R) -> Result<TiltingData> {
        let cat = self.category(p, rng)?;
        TiltingData::new(cat, &self.tilting, rng)
    }
}

fn module_spec(quiver: &Quiver, m: ModuleFile) -> Result<ModuleSpec> {
    let bad = |reason: String| Error::InvalidModule {
        name: m.name.clone(),
        reason,
    };
    let mut dims = vec![0; quiver.vertices().len()];
    for (v, &d) in &m.dims {
        let i = quiver
            .vertices()
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| bad(format!("unknown vertex {v}")))?;
        dims[i] = d;
    }
    for a in m.action.keys() {
        if !quiver.arrows().iter().any(|x| &x.name == a) {
            return Err(bad(format!("unknown arrow {a}")));
        }
    }
    let mut arrows = Vec::new();
    for a in quiver.arrows() {
        let (r, c) = (dims[a.target], dims[a.source]);
        let rows = match m.action.get(&a.name) {
            None => vec![vec![0; c]; r],
            Some(rows) => {
                // An empty matrix may be written as [] regardless of shape.
                let empty = r * c == 0 && rows.iter().all(Vec::is_empty);
                if empty {
                    vec![vec![0; c]; r]
                } else if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(bad(format!("matrix of arrow {} must be {r} x {c}", a.name)));
                } else {
                    rows.clone()
                }
            }
        };
        arrows.push(rows);
    }
    Ok(ModuleSpec {
        name: m.name,
        dims,
        arrows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CAT: &str = r#"{"algebra": "algebra.json", "modules": ["m.json"], "tilting": ["T1", "T2", "T3"]}"#;
    const ALG: &str = r#"{"vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "1"}],
        "relations": [[{"path": ["b", "a"], "coeff": 1}], [{"path": ["a", "b"], "coeff": 1}]],
        "prime": 101}"#;
    const MODS: [&str; 4] = [
        r#"{"name": "T1", "dims": {"1": 1}, "action": {}}"#,
        r#"{"name": "2", "dims": {"2": 1}, "action": {}}"#,
        r#"{"name": "T2", "dims": {"1": 1, "2": 1}, "action": {"a": [[1]], "b": [[0]]}}"#,
        r#"{"name": "T3", "dims": {"1": 1, "2": 1}, "action": {"a": [[0]], "b": [[1]]}}"#,
    ];

    #[test]
    fn loads_and_instantiates() {
        let fx = Fixture::from_json(CAT, ALG, &MODS).unwrap();
        assert_eq!(fx.default_prime(), 101);
        assert_eq!(fx.spec("T2").unwrap().dims, vec![1, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for p in [2, 3, 101] {
            let t = fx.instantiate(p, &mut rng).unwrap();
            assert_eq!(t.r(), 1);
            assert_eq!(t.phi().column(0).coords(), &[0, -1, 1]);
        }
    }

    #[test]
    fn schema_errors() {
        let bad_shape = r#"{"name": "T2", "dims": {"1": 1, "2": 1}, "action": {"a": [[1, 0]]}}"#;
        assert!(matches!(
            Fixture::from_json(CAT, ALG, &[MODS[0], bad_shape]),
            Err(Error::InvalidModule { .. })
        ));
        let bad_vertex = r#"{"name": "x", "dims": {"9": 1}}"#;
        assert!(Fixture::from_json(CAT, ALG, &[bad_vertex]).is_err());
        assert!(matches!(Fixture::from_json(CAT, ALG, &MODS[..2]), Err(Error::Fixture(_))));
        assert!(matches!(Fixture::from_json("{", ALG, &MODS), Err(Error::Json { .. })));
        let dup = [MODS[0], MODS[0]];
        assert!(matches!(Fixture::from_json(CAT, ALG, &dup), Err(Error::Fixture(_))));
        let unknown_key = r#"{"name": "x", "dims": {}, "colour": 1}"#;
        assert!(matches!(Fixture::from_json(CAT, ALG, &[unknown_key]), Err(Error::Json { .. })));
    }

    #[test]
    fn relation_violation_is_reported_by_name() {
        let fx = Fixture::from_json(
            CAT,
            ALG,
            &[
                MODS[0],
                MODS[1],
                MODS[3],
                r#"{"name": "T2", "dims": {"1": 1, "2": 1}, "action": {"a": [[1]], "b": [[1]]}}"#,
            ],
        )
        .unwrap();
        let alg = fx.algebra(101).unwrap();
        match fx.module(&alg, fx.spec("T2").unwrap()) {
            Err(Error::InvalidModule { name, .. }) => assert_eq!(name, "T2"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
