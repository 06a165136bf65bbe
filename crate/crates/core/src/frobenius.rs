//! The Frobenius exact structure on modules over a self-injective algebra:
//! projective-injectives, the stable category, suspension, and the passage
//! between short exact sequences and stable triangles.
//!
//! The stable category is never built as a separate object. Stable Hom
//! spaces, `Σ` and triangles are computed on demand inside the module
//! category.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{is_self_injective, Algebra};
use crate::error::{Error, Result};
use crate::matrix::{Basis, Matrix};
use crate::module::{
    check_same, cover_of, ext1_dim, hom_basis, indecomposables_isomorphic, local_radical, projective_sum,
    resolve_and_ext_dims, same_algebra, syzygy, MapQuotient, Module, ShortExactSequence,
};

/// A minimal injective envelope `M → I(M)` and its cokernel `ΣM`.
#[derive(Clone, Debug)]
pub struct InjectiveHull {
    /// Vertices `w` of the summands `A e_w` of `I(M)`.
    pub vertices: Vec<usize>,
    pub module: Module,
    pub map: Matrix,
    pub cokernel: Module,
    pub projection: Matrix,
}

/// For each vertex `v`, the indecomposable projective whose socle is `S_v`,
/// together with a socle vector.
fn socle_owners(algebra: &Arc<Algebra>) -> Result<Vec<(usize, Vec<u64>)>> {
    let n = algebra.num_vertices();
    let mut owners: Vec<Option<(usize, Vec<u64>)>> = vec![None; n];
    for w in 0..n {
        let pw = Module::projective(algebra.clone(), w);
        let soc = pw.socle();
        if soc.len() != 1 {
            return Err(Error::NotSelfInjective(format!(
                "socle of the projective at {} is not simple",
                algebra.vertex_labels()[w]
            )));
        }
        let z = soc.vectors()[0].clone();
        let i = z.iter().position(|&c| c != 0).expect("nonzero socle vector");
        let v = (0..n).find(|&v| pw.block(v).contains(&i)).expect("vertex");
        if owners[v].is_some() {
            return Err(Error::NotSelfInjective(format!(
                "two projectives share the socle {}",
                algebra.vertex_labels()[v]
            )));
        }
        owners[v] = Some((w, z));
    }
    owners
        .into_iter()
        .enumerate()
        .map(|(v, o)| {
            o.ok_or_else(|| {
                Error::NotSelfInjective(format!("no projective has socle {}", algebra.vertex_labels()[v]))
            })
        })
        .collect()
}

/// Socle of `M` split into vectors each supported on one vertex block.
fn socle_by_vertex(m: &Module) -> Vec<(usize, Vec<u64>)> {
    let soc = m.socle();
    let p = m.prime();
    let mut out = Vec::new();
    for v in 0..m.dims().len() {
        let mut b = Basis::empty(p, m.dim());
        for s in soc.vectors() {
            let mut part = vec![0; m.dim()];
            for i in m.block(v) {
                part[i] = s[i];
            }
            b.insert(part);
        }
        out.extend(b.vectors().iter().map(|x| (v, x.clone())));
    }
    out
}

/// The minimal injective envelope over a self-injective algebra.
pub fn injective_hull(m: &Module) -> Result<InjectiveHull> {
    let alg = m.algebra().clone();
    let p = m.prime();
    let owners = socle_owners(&alg)?;
    let soc = socle_by_vertex(m);
    let vertices: Vec<usize> = soc.iter().map(|(v, _)| owners[*v].0).collect();
    let parts: Vec<Module> = vertices.iter().map(|&w| Module::projective(alg.clone(), w)).collect();
    let (hull, inc, _) = crate::module::direct_sum_with_maps(&alg, &parts);
    debug_assert_eq!(hull, projective_sum(&alg, &vertices));
    let k = soc.len();
    if k == 0 {
        return Ok(InjectiveHull {
            vertices,
            module: hull.clone(),
            map: Matrix::zeros(0, m.dim(), p),
            cokernel: hull,
            projection: Matrix::zeros(0, 0, p),
        });
    }
    // σ sends the k-th socle vector to the socle of the k-th summand.
    let sigma_cols: Vec<Vec<u64>> = soc
        .iter()
        .enumerate()
        .map(|(idx, (v, _))| inc[idx].mul_vec(&owners[*v].1))
        .collect();
    let sigma = Matrix::from_columns(p, hull.dim(), &sigma_cols);
    let s = Matrix::from_columns(p, m.dim(), &soc.iter().map(|(_, x)| x.clone()).collect::<Vec<_>>());
    let homs = hom_basis(m, &hull);
    let system = Matrix::from_columns(p, hull.dim() * k, &homs.iter().map(|h| h.mul(&s).flatten()).collect::<Vec<_>>());
    let coeffs = system
        .solve_vec(&sigma.flatten())
        .ok_or_else(|| Error::NotSelfInjective("socle map does not extend to the envelope".into()))?;
    let mut map = Matrix::zeros(hull.dim(), m.dim(), p);
    for (c, h) in coeffs.iter().zip(&homs) {
        map.add_scaled(*c, h);
    }
    if map.rank() != m.dim() {
        return Err(Error::NotSelfInjective("envelope map is not injective".into()));
    }
    let (cokernel, projection) = Module::cokernel_of(&hull, &map);
    Ok(InjectiveHull {
        vertices,
        module: hull,
        map,
        cokernel,
        projection,
    })
}

/// `ΣM`, the cokernel of the injective envelope. It has no projective summands.
pub fn suspend(m: &Module) -> Result<Module> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    Ok(injective_hull(m)?.cokernel)
}

/// `Σ^{-1}M`, the kernel of the projective cover. It has no projective summands.
pub fn desuspend(m: &Module) -> Module {
    syzygy(m)
}

/// `Hom(M, N)` modulo maps factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub quotient: MapQuotient,
}

impl StableHom {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Representatives of a basis of the stable Hom space.
    pub fn basis(&self) -> &[Matrix] {
        self.quotient.reps()
    }

    pub fn coordinates(&self, f: &Matrix) -> Option<Vec<u64>> {
        self.quotient.coordinates(f)
    }

    pub fn factors_through_projective(&self, f: &Matrix) -> bool {
        self.quotient.in_subspace(f)
    }
}

/// Maps through projectives are exactly those factoring through the
/// projective cover of the target.
pub fn stable_hom(m: &Module, n: &Module) -> Result<StableHom> {
    check_same(m, n)?;
    let p = m.prime();
    let homs = hom_basis(m, n);
    let factoring: Vec<Matrix> = if n.is_zero() || m.is_zero() {
        Vec::new()
    } else {
        let cover = cover_of(n);
        hom_basis(m, &cover.module).iter().map(|g| cover.map.mul(g)).collect()
    };
    Ok(StableHom {
        quotient: MapQuotient::new(p, n.dim(), m.dim(), factoring, &homs),
    })
}

/// A triangle `A → B → C → ΣA` of the stable category, with the connecting
/// map as an honest module map `C → ΣA`.
#[derive(Clone, Debug)]
pub struct StableTriangle {
    pub sequence: ShortExactSequence,
    pub hull: InjectiveHull,
    pub connecting: Matrix,
}

impl StableTriangle {
    pub fn suspension(&self) -> &Module {
        &self.hull.cokernel
    }
}

/// The standard triangle of a short exact sequence: extend the envelope of
/// `A` along `A → B` and pass to cokernels.
pub fn lift_triangle(s: &ShortExactSequence) -> Result<StableTriangle> {
    let s = ShortExactSequence::new(s.a.clone(), s.b.clone(), s.c.clone(), s.f.clone(), s.g.clone())?;
    let p = s.a.prime();
    let hull = injective_hull(&s.a)?;
    let connecting = if s.a.is_zero() {
        Matrix::zeros(hull.cokernel.dim(), s.c.dim(), p)
    } else {
        let homs = hom_basis(&s.b, &hull.module);
        let target = hull.map.flatten();
        let system = Matrix::from_columns(p, target.len(), &homs.iter().map(|u| u.mul(&s.f).flatten()).collect::<Vec<_>>());
        let coeffs = system
            .solve_vec(&target)
            .ok_or_else(|| Error::NotSelfInjective("envelope does not extend along the inflation".into()))?;
        let mut u = Matrix::zeros(hull.module.dim(), s.b.dim(), p);
        for (c, h) in coeffs.iter().zip(&homs) {
            u.add_scaled(*c, h);
        }
        // A linear section of g; the composite is independent of the choice.
        let section = s
            .g
            .solve(&Matrix::identity(s.c.dim(), p))?
            .ok_or_else(|| Error::NotExact("second map is not surjective".into()))?;
        hull.projection.mul(&u).mul(&section)
    };
    debug_assert!(s.c.is_homomorphism(&hull.cokernel, &connecting));
    Ok(StableTriangle {
        sequence: s,
        hull,
        connecting,
    })
}

/// Realizes a stable triangle ending in `h: C → ΣA` as a short exact
/// sequence `0 → A → E → C → 0`, by pulling back the envelope sequence of
/// `A` along `h`. The middle term agrees with the triangle's up to
/// projective summands.
pub fn realize_triangle(a: &Module, c: &Module, h: &Matrix) -> Result<ShortExactSequence> {
    check_same(a, c)?;
    let p = a.prime();
    let hull = injective_hull(a)?;
    if !c.is_homomorphism(&hull.cokernel, h) {
        return Err(Error::NotExact("connecting map is not a module map into the suspension".into()));
    }
    let maps = hull.module.sum_maps(c);
    let sum = hull.module.direct_sum(c);
    let q = hull.projection.mul(&maps.proj[0]);
    let hc = h.mul(&maps.proj[1]);
    let diff = q.sub(&hc);
    let e = Module::kernel_of(&sum, &diff);
    let into_sum = maps.inc[0].mul(&hull.map);
    let cols: Vec<Vec<u64>> = (0..a.dim())
        .map(|j| {
            e.coordinates(&into_sum.column(j))
                .ok_or_else(|| Error::NotExact("inflation misses the pullback".into()))
        })
        .collect::<Result<_>>()?;
    let f = Matrix::from_columns(p, e.module.dim(), &cols);
    let g = maps.proj[1].mul(&e.inclusion);
    ShortExactSequence::new(a.clone(), e.module, c.clone(), f, g)
}

/// Compares `dim Ext^i(M, N)` from a resolution with `dim Ext^1(M, Σ^{i-1} N)`.
pub fn higher_ext_check(m: &Module, n: &Module, i: usize) -> Result<bool> {
    assert!(i >= 1, "degree must be positive");
    let direct = resolve_and_ext_dims(m, n, i)?[i];
    let mut shifted = n.clone();
    for _ in 1..i {
        shifted = suspend(&shifted)?;
    }
    Ok(direct == ext1_dim(m, &shifted))
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub module: Module,
    pub projective: bool,
}

/// A Frobenius module category with a named catalog of indecomposables.
#[derive(Clone, Debug)]
pub struct FrobeniusCategory {
    algebra: Arc<Algebra>,
    catalog: Vec<CatalogEntry>,
}

impl FrobeniusCategory {
    /// Validates self-injectivity, indecomposability and pairwise
    /// non-isomorphism of the catalog, and `Ext^1` symmetry on all pairs.
    pub fn new<R: Rng + ?Sized>(algebra: Arc<Algebra>, entries: Vec<(String, Module)>, rng: &mut R) -> Result<Self> {
        if !is_self_injective(&algebra) {
            return Err(Error::NotSelfInjective(
                "some indecomposable projective is not injective".into(),
            ));
        }
        let mut catalog: Vec<CatalogEntry> = Vec::new();
        for (name, module) in entries {
            if !same_algebra(module.algebra(), &algebra) {
                return Err(Error::AlgebraMismatch);
            }
            if module.is_zero() || local_radical(&hom_basis(&module, &module), rng).is_none() {
                return Err(Error::DecomposableCatalogEntry(name));
            }
            if let Some(prev) = catalog.iter().find(|e| indecomposables_isomorphic(&e.module, &module)) {
                return Err(Error::DuplicateCatalogEntry(prev.name.clone(), name));
            }
            let projective = module.is_projective();
            catalog.push(CatalogEntry {
                name,
                module,
                projective,
            });
        }
        let cat = FrobeniusCategory { algebra, catalog };
        cat.check_two_calabi_yau()?;
        Ok(cat)
    }

    fn check_two_calabi_yau(&self) -> Result<()> {
        for (i, x) in self.catalog.iter().enumerate() {
            for y in &self.catalog[i..] {
                let ab = ext1_dim(&x.module, &y.module);
                let ba = ext1_dim(&y.module, &x.module);
                if ab != ba {
                    return Err(Error::NotTwoCalabiYau {
                        a: x.name.clone(),
                        b: y.name.clone(),
                        ab,
                        ba,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn catalog(&self) -> &[CatalogEntry] {
        &self.catalog
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.catalog.iter().position(|e| e.name == name)
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.index_of(name)
            .map(|i| &self.catalog[i])
            .ok_or_else(|| Error::UnknownModule(name.to_string()))
    }

    /// Catalog index of an indecomposable isomorphic to `m`.
    pub fn find_isomorphic(&self, m: &Module) -> Option<usize> {
        self.catalog.iter().position(|e| indecomposables_isomorphic(&e.module, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver, Relation};
    use crate::module::{ext1, extension_middle, is_isomorphic};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    struct Fx {
        s1: Module,
        s2: Module,
        t2: Module,
        t3: Module,
    }

    fn fixture() -> Fx {
        let q = Quiver::new(vec!["1", "2"], vec![("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let rels = vec![Relation::monomial(vec!["b", "a"]), Relation::monomial(vec!["a", "b"])];
        let alg = Arc::new(build_algebra(&q, &rels, 101).unwrap());
        Fx {
            s1: Module::simple(alg.clone(), 0),
            s2: Module::simple(alg.clone(), 1),
            t2: Module::projective(alg.clone(), 0),
            t3: Module::projective(alg, 1),
        }
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(3)
    }

    #[test]
    fn suspension_swaps_simples() {
        let f = fixture();
        let mut r = rng();
        assert!(is_isomorphic(&suspend(&f.s2).unwrap(), &f.s1, &mut r).unwrap());
        assert!(is_isomorphic(&suspend(&f.s1).unwrap(), &f.s2, &mut r).unwrap());
        assert!(suspend(&f.t2).unwrap().is_zero());
        assert!(is_isomorphic(&desuspend(&f.s1), &f.s2, &mut r).unwrap());
        let hull = injective_hull(&f.s2).unwrap();
        assert!(is_isomorphic(&hull.module, &f.t2, &mut r).unwrap());
    }

    #[test]
    fn stable_homs() {
        let f = fixture();
        assert_eq!(stable_hom(&f.t2, &f.t2).unwrap().dim(), 0);
        assert_eq!(stable_hom(&f.s1, &f.s1).unwrap().dim(), 1);
        assert_eq!(stable_hom(&f.s1, &f.s2).unwrap().dim(), 0);
        assert_eq!(stable_hom(&f.t3, &f.s2).unwrap().dim(), 0);
    }

    #[test]
    fn triangles_round_trip() {
        let f = fixture();
        let mut r = rng();
        let e = ext1(&f.s1, &f.s2).unwrap();
        let ses = extension_middle(&e.basis()[0]).unwrap();
        let tri = lift_triangle(&ses).unwrap();
        assert!(is_isomorphic(tri.suspension(), &f.s1, &mut r).unwrap());
        assert!(!tri.connecting.is_zero());
        let back = realize_triangle(&tri.sequence.a, &tri.sequence.c, &tri.connecting).unwrap();
        assert!(is_isomorphic(&back.b, &f.t2, &mut r).unwrap());

        let split = ShortExactSequence::split(&f.s2, &f.s1);
        let tri = lift_triangle(&split).unwrap();
        assert!(tri.connecting.is_zero());
    }

    #[test]
    fn higher_ext() {
        let f = fixture();
        assert!(higher_ext_check(&f.s1, &f.s1, 1).unwrap());
        assert!(higher_ext_check(&f.s1, &f.s1, 2).unwrap());
        assert_eq!(resolve_and_ext_dims(&f.s1, &f.s1, 2).unwrap()[2], 1);
        assert!(higher_ext_check(&f.s2, &f.t3, 2).unwrap());
        assert!(higher_ext_check(&f.s2, &f.s1, 3).unwrap());
    }

    #[test]
    fn category_validation() {
        let f = fixture();
        let alg = f.s1.algebra().clone();
        let mut r = rng();
        let entries = vec![
            ("1".to_string(), f.s1.clone()),
            ("2".to_string(), f.s2.clone()),
            ("T2".to_string(), f.t2.clone()),
            ("T3".to_string(), f.t3.clone()),
        ];
        let cat = FrobeniusCategory::new(alg.clone(), entries, &mut r).unwrap();
        let flags: Vec<bool> = cat.catalog().iter().map(|e| e.projective).collect();
        assert_eq!(flags, vec![false, false, true, true]);
        let dup = vec![("1".to_string(), f.s1.clone()), ("x".to_string(), f.s1.clone())];
        assert!(matches!(
            FrobeniusCategory::new(alg.clone(), dup, &mut r),
            Err(Error::DuplicateCatalogEntry(..))
        ));
        let dec = vec![("s".to_string(), f.s1.direct_sum(&f.s2))];
        assert!(matches!(
            FrobeniusCategory::new(alg, dec, &mut r),
            Err(Error::DecomposableCatalogEntry(_))
        ));
    }
}
