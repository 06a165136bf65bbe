//! Cluster-tilting data `T = T_1 ⊕ ... ⊕ T_n` and everything derived from
//! it: `B = End(T)^op`, the stable version `C`, the functors `F = Hom(T, -)`
//! and `H = Hom_stable(T', -)`, approximations, indices, `Θ` and the map `Φ`
//! from `K_0(mod C)` to the split Grothendieck group of `add T`.
//!
//! Nonprojective summands come first; `r` of them. A map `T_s → T_t` is a
//! basis element of `B` in `e_s B e_t`, so `F(M)` has block `i` equal to
//! `Hom(T_i, M)` and `B` acts by precomposition.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::algebra::{Algebra, AlgebraData, Combination};
use crate::error::{Error, Result};
use crate::frobenius::{injective_hull, lift_triangle, stable_hom, suspend, FrobeniusCategory, StableHom};
use crate::k0::{K0Basis, K0Vector};
use crate::matrix::Matrix;
use crate::module::{
    cover_of, direct_sum_with_maps, ext1, ext1_dim, extension_middle, hom_basis, indecomposables_isomorphic,
    local_radical, syzygy, ExtSpace, MapQuotient, Module, ProjectiveCover, ShortExactSequence,
};

/// Outcome of checking rigidity and maximality of a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingVerdict {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

/// Rigidity of `T` and maximality relative to the catalog.
pub fn verify_cluster_tilting(category: &FrobeniusCategory, names: &[String]) -> Result<TiltingVerdict> {
    let mut diagnostics = Vec::new();
    let summands: Vec<&Module> = names
        .iter()
        .map(|n| category.get(n).map(|e| &e.module))
        .collect::<Result<_>>()?;
    for (i, x) in summands.iter().enumerate() {
        for (j, y) in summands.iter().enumerate() {
            let d = ext1_dim(x, y);
            if d != 0 {
                diagnostics.push(format!("Ext^1({}, {}) has dimension {d}", names[i], names[j]));
            }
        }
    }
    for entry in category.catalog() {
        if summands.iter().any(|t| indecomposables_isomorphic(t, &entry.module)) {
            continue;
        }
        let x = &entry.module;
        let rigid_with_t = ext1_dim(x, x) == 0 && summands.iter().all(|t| ext1_dim(x, t) == 0 && ext1_dim(t, x) == 0);
        if rigid_with_t {
            diagnostics.push(format!("{} can be added without creating extensions", entry.name));
        }
    }
    Ok(TiltingVerdict {
        ok: diagnostics.is_empty(),
        diagnostics,
    })
}

/// `Φ` as an integer `n × r` matrix on the simple classes of `mod C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMatrix {
    rows: Vec<Vec<i64>>,
}

impl PhiMatrix {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn r(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// `Φ(e)` for a class `e` in `K_0(mod C)`.
    pub fn apply(&self, e: &[i64]) -> K0Vector {
        assert_eq!(e.len(), self.r(), "class length must equal r");
        K0Vector::new(
            K0Basis::SummandsOfT,
            self.rows.iter().map(|row| row.iter().zip(e).map(|(a, b)| a * b).sum()).collect(),
        )
    }

    /// The image of the `j`-th simple class.
    pub fn column(&self, j: usize) -> K0Vector {
        K0Vector::new(K0Basis::SummandsOfT, self.rows.iter().map(|row| row[j]).collect())
    }
}

impl fmt::Display for PhiMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            write!(f, "[{} ]", cells.join(""))?;
        }
        Ok(())
    }
}

/// An approximation by `add T`: `T_0 → M` on the right or `M → T_0` on the
/// left, with the other end of the sequence and its decomposition in `add T`.
#[derive(Clone, Debug)]
pub struct Approximation {
    /// Multiplicity of each `T_i` in `T_0`.
    pub multiplicities: Vec<usize>,
    pub object: Module,
    pub map: Matrix,
    /// Kernel (right) or cokernel (left), which lies in `add T`.
    pub remainder: Module,
    /// Inclusion `K → T_0` (right) or projection `T_0 → C` (left).
    pub remainder_map: Matrix,
    pub remainder_multiplicities: Vec<usize>,
}

impl Approximation {
    /// `0 → K → T_0 → M → 0` or `0 → M → T_0 → C → 0`.
    pub fn sequence(&self, m: &Module, right: bool) -> ShortExactSequence {
        if right {
            ShortExactSequence {
                a: self.remainder.clone(),
                b: self.object.clone(),
                c: m.clone(),
                f: self.remainder_map.clone(),
                g: self.map.clone(),
            }
        } else {
            ShortExactSequence {
                a: m.clone(),
                b: self.object.clone(),
                c: self.remainder.clone(),
                f: self.map.clone(),
                g: self.remainder_map.clone(),
            }
        }
    }
}

/// A module of the form `F(M)` or `H(M)`, with the Hom-space bases that
/// make up its blocks.
#[derive(Clone, Debug)]
pub struct FunctorModule {
    pub module: Module,
    /// Block `i`: `Hom(T_i, M)`, possibly modulo maps through projectives.
    pub blocks: Vec<MapQuotient>,
}

/// Comparison of both sides of index additivity for one sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityCheck {
    /// `ind(A) - ind(B) + ind(C)`.
    pub alternating: K0Vector,
    /// `Φ(coker H(g))`.
    pub phi_side: K0Vector,
    /// Whether `F(g)` is an epimorphism.
    pub f_epi: bool,
}

impl AdditivityCheck {
    pub fn holds(&self) -> bool {
        self.alternating == self.phi_side && (!self.f_epi || self.alternating.is_zero())
    }
}

/// A map `T_s → T_t` used as a basis element of `B` or `C`.
#[derive(Clone, Debug)]
struct Element {
    s: usize,
    t: usize,
    map: Matrix,
}

#[derive(Clone, Debug)]
pub struct TiltingData {
    category: FrobeniusCategory,
    names: Vec<String>,
    summands: Vec<Module>,
    r: usize,
    b: Arc<Algebra>,
    b_elems: Vec<Element>,
    /// `Hom(T_s, T_t)` with basis the `B` elements of that pair.
    b_pairs: Vec<Vec<MapQuotient>>,
    /// Global `B` index of the `k`-th basis map of each pair.
    b_index: Vec<Vec<Vec<usize>>>,
    /// Radical maps `T_s → T_t`.
    radical: Vec<Vec<Vec<Matrix>>>,
    c: Arc<Algebra>,
    c_elems: Vec<Element>,
    c_pairs: Vec<Vec<StableHom>>,
    c_index: Vec<Vec<Vec<usize>>>,
    /// `dim C × dim B` matrix of the quotient map `B → C`.
    projection: Matrix,
    /// Summand index of the indecomposable projective at each vertex.
    projective_at: Vec<usize>,
    phi: Option<PhiMatrix>,
}

impl TiltingData {
    /// Validates and assembles tilting data; `names` refer to catalog
    /// entries. Nonprojective summands are moved to the front, keeping the
    /// given order otherwise.
    pub fn new<R: Rng + ?Sized>(category: FrobeniusCategory, names: &[String], rng: &mut R) -> Result<Self> {
        let verdict = verify_cluster_tilting(&category, names)?;
        if !verdict.ok {
            return Err(Error::NotClusterTilting(verdict.diagnostics.join("; ")));
        }
        let mut ordered: Vec<String> = Vec::new();
        for projective in [false, true] {
            for n in names {
                if category.get(n)?.projective == projective {
                    ordered.push(n.clone());
                }
            }
        }
        let summands: Vec<Module> = ordered.iter().map(|n| Ok(category.get(n)?.module.clone())).collect::<Result<_>>()?;
        let r = ordered.iter().take_while(|n| !category.get(n).map(|e| e.projective).unwrap_or(true)).count();
        let n = summands.len();
        let alg = category.algebra().clone();
        let p = alg.prime();

        let mut projective_at = Vec::new();
        for v in 0..alg.num_vertices() {
            let pv = Module::projective(alg.clone(), v);
            let i = summands
                .iter()
                .position(|t| indecomposables_isomorphic(t, &pv))
                .ok_or_else(|| {
                    Error::NotClusterTilting(format!(
                        "the projective at vertex {} is not a summand",
                        alg.vertex_labels()[v]
                    ))
                })?;
            projective_at.push(i);
        }

        // B: identities first, then radical maps pair by pair.
        let mut radical: Vec<Vec<Vec<Matrix>>> = vec![vec![Vec::new(); n]; n];
        let mut pair_maps: Vec<Vec<Vec<Matrix>>> = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            for t in 0..n {
                let homs = hom_basis(&summands[s], &summands[t]);
                if s == t {
                    let rad = local_radical(&homs, rng).ok_or_else(|| Error::DecomposableCatalogEntry(ordered[s].clone()))?;
                    radical[s][t] = rad.clone();
                    let mut maps = vec![summands[s].identity_map()];
                    maps.extend(rad);
                    pair_maps[s][t] = maps;
                } else {
                    radical[s][t] = homs.clone();
                    pair_maps[s][t] = homs;
                }
            }
        }
        let mut b_elems: Vec<Element> = (0..n)
            .map(|s| Element {
                s,
                t: s,
                map: summands[s].identity_map(),
            })
            .collect();
        let mut b_index: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
        for (s, idx) in b_index.iter_mut().enumerate() {
            idx[s].push(s);
        }
        for s in 0..n {
            for t in 0..n {
                let start = usize::from(s == t);
                for map in &pair_maps[s][t][start..] {
                    b_index[s][t].push(b_elems.len());
                    b_elems.push(Element { s, t, map: map.clone() });
                }
            }
        }
        let b_pairs: Vec<Vec<MapQuotient>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        MapQuotient::new(p, summands[t].dim(), summands[s].dim(), Vec::new(), &pair_maps[s][t])
                    })
                    .collect()
            })
            .collect();
        let b_labels: Vec<String> = b_elems
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if i < n {
                    format!("1_{}", ordered[e.s])
                } else {
                    let k = b_index[e.s][e.t].iter().position(|&g| g == i).unwrap_or(0);
                    format!("{}->{}#{k}", ordered[e.s], ordered[e.t])
                }
            })
            .collect();
        let b_mult = structure_constants(&b_elems, |s, u, f| {
            b_pairs[s][u]
                .coordinates(f)
                .expect("composite lies in Hom(T_s, T_u)")
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| (b_index[s][u][k], c))
                .collect()
        });
        let b = Arc::new(Algebra::from_data(AlgebraData {
            prime: p,
            labels: b_labels,
            vertex_labels: ordered.clone(),
            ends: b_elems.iter().map(|e| (e.t, e.s)).collect(),
            idempotents: (0..n).collect(),
            mult: b_mult,
            radical: (n..b_elems.len()).collect(),
            generators: (n..b_elems.len()).collect(),
            presentation: None,
        })?);

        // C: stable Hom among nonprojective summands, represented by B elements.
        let mut c_pairs: Vec<Vec<StableHom>> = Vec::new();
        for s in 0..r {
            let mut row = Vec::new();
            for t in 0..r {
                let st = stable_hom(&summands[s], &summands[t])?;
                let q = MapQuotient::new(
                    p,
                    summands[t].dim(),
                    summands[s].dim(),
                    factoring_maps(&summands[s], &summands[t]),
                    &pair_maps[s][t],
                );
                debug_assert_eq!(q.dim(), st.dim());
                row.push(StableHom { quotient: q });
            }
            c_pairs.push(row);
        }
        let mut c_elems: Vec<Element> = Vec::new();
        let mut c_index: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); r]; r];
        for (s, row) in c_index.iter_mut().enumerate() {
            let rep = &c_pairs[s][s].basis()[0];
            if *rep != summands[s].identity_map() {
                return Err(Error::NotClusterTilting(format!(
                    "identity of {} factors through a projective",
                    ordered[s]
                )));
            }
            row[s].push(c_elems.len());
            c_elems.push(Element {
                s,
                t: s,
                map: rep.clone(),
            });
        }
        for s in 0..r {
            for t in 0..r {
                let start = usize::from(s == t);
                for map in &c_pairs[s][t].basis()[start..] {
                    c_index[s][t].push(c_elems.len());
                    c_elems.push(Element { s, t, map: map.clone() });
                }
            }
        }
        let c_labels: Vec<String> = c_elems
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if i < r {
                    format!("1_{}", ordered[e.s])
                } else {
                    let k = c_index[e.s][e.t].iter().position(|&g| g == i).unwrap_or(0);
                    format!("{}->{}#{k}", ordered[e.s], ordered[e.t])
                }
            })
            .collect();
        let c_mult = structure_constants(&c_elems, |s, u, f| {
            c_pairs[s][u]
                .coordinates(f)
                .expect("composite lies in Hom(T_s, T_u)")
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| (c_index[s][u][k], c))
                .collect()
        });
        let c = Arc::new(Algebra::from_data(AlgebraData {
            prime: p,
            labels: c_labels,
            vertex_labels: ordered[..r].to_vec(),
            ends: c_elems.iter().map(|e| (e.t, e.s)).collect(),
            idempotents: (0..r).collect(),
            mult: c_mult,
            radical: (r..c_elems.len()).collect(),
            generators: (r..c_elems.len()).collect(),
            presentation: None,
        })?);
        let mut projection = Matrix::zeros(c_elems.len(), b_elems.len(), p);
        for (j, e) in b_elems.iter().enumerate() {
            if e.s < r && e.t < r {
                let coords = c_pairs[e.s][e.t].coordinates(&e.map).expect("B element lies in Hom");
                for (k, x) in coords.into_iter().enumerate() {
                    projection.set(c_index[e.s][e.t][k], j, x);
                }
            }
        }

        let mut data = TiltingData {
            category,
            names: ordered,
            summands,
            r,
            b,
            b_elems,
            b_pairs,
            b_index,
            radical,
            c,
            c_elems,
            c_pairs,
            c_index,
            projection,
            projective_at,
            phi: None,
        };
        data.phi = Some(data.solve_phi()?);
        Ok(data)
    }

    pub fn category(&self) -> &FrobeniusCategory {
        &self.category
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn summands(&self) -> &[Module] {
        &self.summands
    }

    pub fn n(&self) -> usize {
        self.summands.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn prime(&self) -> u64 {
        self.b.prime()
    }

    /// `B = End(T)^op`.
    pub fn endomorphism_algebra(&self) -> &Arc<Algebra> {
        &self.b
    }

    /// `C`, the stable endomorphism algebra of the nonprojective part.
    pub fn stable_endomorphism_algebra(&self) -> &Arc<Algebra> {
        &self.c
    }

    pub fn phi(&self) -> &PhiMatrix {
        self.phi.as_ref().expect("phi is computed at construction")
    }

    /// The matrix of `B → C` on basis elements.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    fn zero_class(&self) -> K0Vector {
        K0Vector::zero(K0Basis::SummandsOfT, self.n())
    }

    /// `F(M) = Hom(T, M)` as a `B`-module.
    pub fn f_module(&self, m: &Module) -> FunctorModule {
        let p = self.prime();
        let blocks: Vec<MapQuotient> = self
            .summands
            .iter()
            .map(|t| MapQuotient::new(p, m.dim(), t.dim(), Vec::new(), &hom_basis(t, m)))
            .collect();
        let module = self.functor_module(&self.b, &self.b_elems, &blocks);
        FunctorModule { module, blocks }
    }

    /// `H(M) = Hom_stable(T', M)` as a `C`-module.
    pub fn h_module(&self, m: &Module) -> FunctorModule {
        let p = self.prime();
        let blocks: Vec<MapQuotient> = self.summands[..self.r]
            .iter()
            .map(|t| MapQuotient::new(p, m.dim(), t.dim(), factoring_maps(t, m), &hom_basis(t, m)))
            .collect();
        let module = self.functor_module(&self.c, &self.c_elems, &blocks);
        FunctorModule { module, blocks }
    }

    fn functor_module(&self, alg: &Arc<Algebra>, elems: &[Element], blocks: &[MapQuotient]) -> Module {
        let p = alg.prime();
        let dims: Vec<usize> = blocks.iter().map(MapQuotient::dim).collect();
        let mut offsets = vec![0];
        for d in &dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let action = elems
            .iter()
            .map(|e| {
                // f ∈ Hom(T_t, M) ↦ f ∘ e ∈ Hom(T_s, M)
                let mut a = Matrix::zeros(total, total, p);
                for (k, f) in blocks[e.t].reps().iter().enumerate() {
                    let coords = blocks[e.s].coordinates(&f.mul(&e.map)).expect("composite lies in Hom");
                    for (i, x) in coords.into_iter().enumerate() {
                        a.set(offsets[e.s] + i, offsets[e.t] + k, x);
                    }
                }
                a
            })
            .collect();
        Module::new(alg.clone(), dims, action).expect("functor image is a module")
    }

    /// The `C`-module map `H(g): H(M) → H(N)`.
    pub fn h_map(&self, hm: &FunctorModule, hn: &FunctorModule, g: &Matrix) -> Matrix {
        functor_map(self.prime(), hm, hn, g)
    }

    /// The `B`-module map `F(g): F(M) → F(N)`.
    pub fn f_map(&self, fm: &FunctorModule, fn_: &FunctorModule, g: &Matrix) -> Matrix {
        functor_map(self.prime(), fm, fn_, g)
    }

    /// `Ext^1(T', M)` as a `C`-module: a stable map `c: T_s → T_t` acts by
    /// pulling extensions of `T_t` back to `T_s`. Built from cocycles on
    /// syzygies, independently of `H(ΣM)`.
    pub fn ext_module(&self, m: &Module) -> Result<Module> {
        let p = self.prime();
        let spaces: Vec<ExtSpace> = self.summands[..self.r].iter().map(|t| ext1(t, m)).collect::<Result<_>>()?;
        let dims: Vec<usize> = spaces.iter().map(ExtSpace::dim).collect();
        let mut offsets = vec![0];
        for d in &dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut action = Vec::with_capacity(self.c_elems.len());
        for e in &self.c_elems {
            let mut a = Matrix::zeros(total, total, p);
            if dims[e.s] > 0 && dims[e.t] > 0 {
                let lift = syzygy_lift(spaces[e.s].cover(), spaces[e.t].cover(), &e.map)?;
                for (k, class) in spaces[e.t].basis().iter().enumerate() {
                    let coords = spaces[e.s]
                        .coordinates(&class.cocycle().mul(&lift))
                        .ok_or_else(|| Error::NotExact("pulled-back cocycle outside Hom(ΩT, M)".into()))?;
                    for (i, x) in coords.into_iter().enumerate() {
                        a.set(offsets[e.s] + i, offsets[e.t] + k, x);
                    }
                }
            }
            action.push(a);
        }
        Module::new(self.c.clone(), dims, action)
    }

    /// Inflates a `C`-module to a `B`-module through `B → C`.
    pub fn inflate(&self, m: &Module) -> Module {
        let p = self.prime();
        let mut dims = m.dims().to_vec();
        dims.resize(self.n(), 0);
        let d = m.dim();
        let action = (0..self.b.dim())
            .map(|j| {
                let mut a = Matrix::zeros(d, d, p);
                for k in 0..self.c.dim() {
                    let x = self.projection.get(k, j);
                    if x != 0 {
                        a.add_scaled(x, m.action(k));
                    }
                }
                a
            })
            .collect();
        Module::new(self.b.clone(), dims, action).expect("inflation of a C-module")
    }

    /// The simple `B`-module at summand `i`.
    pub fn b_simple(&self, i: usize) -> Module {
        Module::simple(self.b.clone(), i)
    }

    /// Top of `F(M)` as maps `T_i → M`, grouped by summand.
    fn right_top(&self, m: &Module) -> Vec<Vec<Matrix>> {
        let fm = self.f_module(m);
        let rad = fm.module.radical();
        let mut out = vec![Vec::new(); self.n()];
        for idx in rad.complement_indices() {
            let i = (0..self.n()).find(|&i| fm.module.block(i).contains(&idx)).expect("block");
            let k = idx - fm.module.offset(i);
            out[i].push(fm.blocks[i].reps()[k].clone());
        }
        out
    }

    fn assemble_right(&self, tops: &[Vec<Matrix>], target: &Module) -> (Vec<usize>, Module, Matrix) {
        let p = self.prime();
        let alg = self.category.algebra();
        let mults: Vec<usize> = tops.iter().map(Vec::len).collect();
        let parts: Vec<Module> = tops
            .iter()
            .enumerate()
            .flat_map(|(i, fs)| fs.iter().map(move |_| self.summands[i].clone()))
            .collect();
        let (obj, _, proj) = direct_sum_with_maps(alg, &parts);
        let mut map = Matrix::zeros(target.dim(), obj.dim(), p);
        for (f, pr) in tops.iter().flatten().zip(&proj) {
            map = map.add(&f.mul(pr));
        }
        (mults, obj, map)
    }

    /// Multiplicities of `M` in `add T`, or `None` if `M ∉ add T`.
    pub fn add_t_class(&self, m: &Module) -> Option<Vec<usize>> {
        if m.is_zero() {
            return Some(vec![0; self.n()]);
        }
        let tops = self.right_top(m);
        let (mults, obj, map) = self.assemble_right(&tops, m);
        (obj.dim() == m.dim() && map.rank() == m.dim()).then_some(mults)
    }

    fn multiplicities_in_add_t(&self, m: &Module, what: &str) -> Result<Vec<usize>> {
        self.add_t_class(m).ok_or_else(|| Error::KernelNotInAddT(what.to_string()))
    }

    /// Minimal right `add T`-approximation `T_0 → M` with kernel in `add T`.
    pub fn minimal_right_approx(&self, m: &Module) -> Result<Approximation> {
        let tops = self.right_top(m);
        let (multiplicities, object, map) = self.assemble_right(&tops, m);
        if map.rank() != m.dim() {
            return Err(Error::NotClusterTilting("a right approximation is not surjective".into()));
        }
        let kernel = Module::kernel_of(&object, &map);
        let remainder_multiplicities = self.multiplicities_in_add_t(&kernel.module, &format!("{m:?}"))?;
        Ok(Approximation {
            multiplicities,
            object,
            map,
            remainder: kernel.module,
            remainder_map: kernel.inclusion,
            remainder_multiplicities,
        })
    }

    /// Minimal left `add T`-approximation `M → T_0` with cokernel in `add T`.
    pub fn minimal_left_approx(&self, m: &Module) -> Result<Approximation> {
        let p = self.prime();
        let alg = self.category.algebra();
        let n = self.n();
        let homs: Vec<Vec<Matrix>> = self.summands.iter().map(|t| hom_basis(m, t)).collect();
        let mut tops: Vec<Vec<Matrix>> = Vec::new();
        for i in 0..n {
            let sub: Vec<Matrix> = (0..n)
                .flat_map(|j| {
                    let homs_j = &homs[j];
                    self.radical[j][i].iter().flat_map(move |r| homs_j.iter().map(move |g| r.mul(g)))
                })
                .collect();
            let q = MapQuotient::new(p, self.summands[i].dim(), m.dim(), sub, &homs[i]);
            tops.push(q.reps().to_vec());
        }
        let multiplicities: Vec<usize> = tops.iter().map(Vec::len).collect();
        let parts: Vec<Module> = tops
            .iter()
            .enumerate()
            .flat_map(|(i, gs)| gs.iter().map(move |_| self.summands[i].clone()))
            .collect();
        let (object, inc, _) = direct_sum_with_maps(alg, &parts);
        let mut map = Matrix::zeros(object.dim(), m.dim(), p);
        for (g, ic) in tops.iter().flatten().zip(&inc) {
            map = map.add(&ic.mul(g));
        }
        if map.rank() != m.dim() {
            return Err(Error::NotClusterTilting("a left approximation is not injective".into()));
        }
        let (remainder, remainder_map) = Module::cokernel_of(&object, &map);
        let remainder_multiplicities = self.multiplicities_in_add_t(&remainder, &format!("{m:?}"))?;
        Ok(Approximation {
            multiplicities,
            object,
            map,
            remainder,
            remainder_map,
            remainder_multiplicities,
        })
    }

    fn difference(&self, a: &[usize], b: &[usize]) -> K0Vector {
        K0Vector::new(
            K0Basis::SummandsOfT,
            a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect(),
        )
    }

    /// `[T_0] - [T_1]` from the minimal right approximation.
    pub fn index(&self, m: &Module) -> Result<K0Vector> {
        if m.is_zero() {
            return Ok(self.zero_class());
        }
        let a = self.minimal_right_approx(m)?;
        Ok(self.difference(&a.multiplicities, &a.remainder_multiplicities))
    }

    /// `[T_0'] - [T_1']` from the minimal left approximation.
    pub fn op_index(&self, m: &Module) -> Result<K0Vector> {
        if m.is_zero() {
            return Ok(self.zero_class());
        }
        let a = self.minimal_left_approx(m)?;
        Ok(self.difference(&a.multiplicities, &a.remainder_multiplicities))
    }

    /// Class of a projective module as a sum of projective summands of `T`.
    pub fn projective_class(&self, vertices: &[usize]) -> K0Vector {
        let mut v = vec![0; self.n()];
        for &w in vertices {
            v[self.projective_at[w]] += 1;
        }
        K0Vector::new(K0Basis::SummandsOfT, v)
    }

    /// Both expressions for `Θ(M)`: `ind(X') - [P] + ind(M)` from the
    /// projective cover `X' → P → M`, and `ind(X') - ind^op(X')`.
    pub fn theta_both(&self, m: &Module) -> Result<(K0Vector, K0Vector)> {
        if m.is_zero() {
            return Ok((self.zero_class(), self.zero_class()));
        }
        let cover = cover_of(m);
        let x = &cover.kernel.module;
        let ind_x = self.index(x)?;
        let definition = &(&ind_x - &self.projective_class(&cover.vertices)) + &self.index(m)?;
        let via_op = &ind_x - &self.op_index(x)?;
        Ok((definition, via_op))
    }

    /// `Θ(M)`, asserting that both expressions agree.
    pub fn theta(&self, m: &Module) -> Result<K0Vector> {
        let (definition, via_op) = self.theta_both(m)?;
        if definition != via_op {
            return Err(Error::ThetaMismatch {
                object: format!("{m:?}"),
                definition: definition.to_string(),
                via_op_index: via_op.to_string(),
            });
        }
        Ok(definition)
    }

    /// Class of `H(M)` in `K_0(mod C)`.
    pub fn h_class(&self, m: &Module) -> Vec<i64> {
        self.h_module(m).module.dim_vector()
    }

    fn solve_phi(&self) -> Result<PhiMatrix> {
        let mut rows: Vec<(String, Vec<i64>, K0Vector)> = Vec::new();
        for entry in self.category.catalog() {
            rows.push((entry.name.clone(), self.h_class(&entry.module), self.theta(&entry.module)?));
        }
        solve_phi_system(self.r, self.n(), &rows)
    }

    /// Checks `ind(A) - ind(B) + ind(C) = Φ(coker H(g))` on a short exact sequence.
    pub fn check_index_additivity(&self, s: &ShortExactSequence) -> Result<AdditivityCheck> {
        let alternating = &(&self.index(&s.a)? - &self.index(&s.b)?) + &self.index(&s.c)?;
        let hb = self.h_module(&s.b);
        let hc = self.h_module(&s.c);
        let hg = self.h_map(&hb, &hc, &s.g);
        let coker = block_cokernel_dims(&hg, &hb.module, &hc.module);
        let phi_side = self.phi().apply(&coker);
        let fb = self.f_module(&s.b);
        let fc = self.f_module(&s.c);
        let f_epi = self.f_map(&fb, &fc, &s.g).rank() == fc.module.dim();
        Ok(AdditivityCheck {
            alternating,
            phi_side,
            f_epi,
        })
    }

    /// Index with respect to the nonprojective part, read off the stable
    /// triangle `T_1 → T_0 → M → ΣT_1` lifted from the approximation sequence.
    pub fn stable_index(&self, m: &Module) -> Result<K0Vector> {
        if m.is_zero() {
            return Ok(K0Vector::zero(K0Basis::SummandsOfT, self.r));
        }
        let a = self.minimal_right_approx(m)?;
        let tri = lift_triangle(&a.sequence(m, true))?;
        let t0 = self.add_t_class(&tri.sequence.b).ok_or_else(|| Error::KernelNotInAddT(format!("{m:?}")))?;
        let t1 = self.add_t_class(&tri.sequence.a).ok_or_else(|| Error::KernelNotInAddT(format!("{m:?}")))?;
        Ok(self.difference(&t0, &t1).truncated(self.r))
    }

    /// `coind_{T'}(M) = -ind_{T'}(Σ^{-1} M)`.
    pub fn stable_coindex(&self, m: &Module) -> Result<K0Vector> {
        Ok(-self.stable_index(&syzygy(m))?)
    }

    /// First `r` coordinates of `Φ[H(M)]` against `ind_{T'}(Σ^{-1}M) + ind_{T'}(M)`.
    pub fn stable_phi_sides(&self, m: &Module) -> Result<(K0Vector, K0Vector)> {
        let lhs = self.phi().apply(&self.h_class(m)).truncated(self.r);
        let rhs = &self.stable_index(&syzygy(m))? + &self.stable_index(m)?;
        Ok((lhs, rhs))
    }

    /// Pairs `(i, j)` violating `Hom_stable(T_i, ΣT_j) = Hom_stable(ΣT_i, T_j) = 0`.
    pub fn stable_hom_vanishing_failures(&self) -> Result<Vec<(usize, usize)>> {
        let shifted: Vec<Module> = self.summands.iter().map(suspend).collect::<Result<_>>()?;
        let mut bad = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if stable_hom(&self.summands[i], &shifted[j])?.dim() != 0
                    || stable_hom(&shifted[i], &self.summands[j])?.dim() != 0
                {
                    bad.push((i, j));
                }
            }
        }
        Ok(bad)
    }

    /// Short exact sequences built from the catalog: projective covers,
    /// injective envelopes, both approximation sequences, nonsplit extensions
    /// for every `Ext^1` basis class, and split sums.
    pub fn generate_sequences(&self) -> Result<Vec<(String, ShortExactSequence)>> {
        let mut out = Vec::new();
        let cat = self.category.catalog();
        for e in cat {
            let m = &e.module;
            let cover = cover_of(m);
            out.push((
                format!("projective cover of {}", e.name),
                ShortExactSequence {
                    a: cover.kernel.module.clone(),
                    b: cover.module.clone(),
                    c: m.clone(),
                    f: cover.kernel.inclusion.clone(),
                    g: cover.map.clone(),
                },
            ));
            let hull = injective_hull(m)?;
            out.push((
                format!("injective envelope of {}", e.name),
                ShortExactSequence {
                    a: m.clone(),
                    b: hull.module.clone(),
                    c: hull.cokernel.clone(),
                    f: hull.map.clone(),
                    g: hull.projection.clone(),
                },
            ));
            out.push((
                format!("right approximation of {}", e.name),
                self.minimal_right_approx(m)?.sequence(m, true),
            ));
            out.push((
                format!("left approximation of {}", e.name),
                self.minimal_left_approx(m)?.sequence(m, false),
            ));
        }
        for x in cat {
            for y in cat {
                let space = ext1(&x.module, &y.module)?;
                for (k, class) in space.basis().iter().enumerate() {
                    out.push((
                        format!("extension {k} of {} by {}", x.name, y.name),
                        extension_middle(class)?,
                    ));
                }
            }
        }
        for (i, x) in cat.iter().enumerate() {
            for y in &cat[i..] {
                out.push((
                    format!("split sum of {} and {}", x.name, y.name),
                    ShortExactSequence::split(&x.module, &y.module),
                ));
            }
        }
        Ok(out)
    }

    /// Summand index of an indecomposable in `add T`, if any.
    pub fn summand_index(&self, m: &Module) -> Option<usize> {
        self.summands.iter().position(|t| indecomposables_isomorphic(t, m))
    }

    /// Ext^1 between summand pairs, for diagnostics.
    pub fn rigid(&self) -> bool {
        self.summands
            .iter()
            .all(|x| self.summands.iter().all(|y| ext1_dim(x, y) == 0))
    }

    /// Index in `B` of the `k`-th basis map `T_s → T_t`.
    pub fn b_element(&self, s: usize, t: usize, k: usize) -> usize {
        self.b_index[s][t][k]
    }

    /// Index in `C` of the `k`-th stable basis map `T_s → T_t`.
    pub fn c_element(&self, s: usize, t: usize, k: usize) -> usize {
        self.c_index[s][t][k]
    }

    /// The map underlying a `C` basis element.
    pub fn c_element_map(&self, k: usize) -> (usize, usize, &Matrix) {
        let e = &self.c_elems[k];
        (e.s, e.t, &e.map)
    }

    /// Number of `C` basis elements for each pair, for diagnostics.
    pub fn c_pair_dims(&self) -> Vec<Vec<usize>> {
        self.c_pairs.iter().map(|row| row.iter().map(StableHom::dim).collect()).collect()
    }

    /// `Hom(T_s, T_t)` dimensions.
    pub fn b_pair_dims(&self) -> Vec<Vec<usize>> {
        self.b_pairs.iter().map(|row| row.iter().map(MapQuotient::dim).collect()).collect()
    }
}

/// Restriction to syzygies of a lift `P_s → P_t` of `f: X_s → X_t`.
fn syzygy_lift(src: &ProjectiveCover, dst: &ProjectiveCover, f: &Matrix) -> Result<Matrix> {
    let p = f.prime();
    let homs = hom_basis(&src.module, &dst.module);
    let target = f.mul(&src.map).flatten();
    let cols: Vec<Vec<u64>> = homs.iter().map(|h| dst.map.mul(h).flatten()).collect();
    let system = Matrix::from_columns(p, target.len(), &cols);
    let coeffs = system
        .solve_vec(&target)
        .ok_or_else(|| Error::NotExact("map does not lift along projective covers".into()))?;
    let mut lift = Matrix::zeros(dst.module.dim(), src.module.dim(), p);
    for (h, &c) in homs.iter().zip(&coeffs) {
        if c != 0 {
            lift.add_scaled(c, h);
        }
    }
    dst.kernel
        .inclusion
        .solve(&lift.mul(&src.kernel.inclusion))?
        .ok_or_else(|| Error::NotExact("lift does not preserve syzygies".into()))
}

/// Maps `M → N` factoring through the projective cover of `N`.
fn factoring_maps(m: &Module, n: &Module) -> Vec<Matrix> {
    if m.is_zero() || n.is_zero() {
        return Vec::new();
    }
    let cover = cover_of(n);
    hom_basis(m, &cover.module).iter().map(|g| cover.map.mul(g)).collect()
}

fn structure_constants(elems: &[Element], coords: impl Fn(usize, usize, &Matrix) -> Combination) -> Vec<Combination> {
    let d = elems.len();
    let mut mult = vec![Vec::new(); d * d];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            // b_i * b_j = b_j ∘ b_i, defined when b_i ends where b_j starts.
            if a.t == b.s {
                mult[i * d + j] = coords(a.s, b.t, &b.map.mul(&a.map));
            }
        }
    }
    mult
}

fn functor_map(p: u64, src: &FunctorModule, dst: &FunctorModule, g: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(dst.module.dim(), src.module.dim(), p);
    for (i, (sb, db)) in src.blocks.iter().zip(&dst.blocks).enumerate() {
        for (k, f) in sb.reps().iter().enumerate() {
            let coords = db.coordinates(&g.mul(f)).expect("composite lies in Hom");
            for (row, x) in coords.into_iter().enumerate() {
                out.set(dst.module.offset(i) + row, src.module.offset(i) + k, x);
            }
        }
    }
    out
}

/// Dimension vector of the cokernel of a block-diagonal module map.
fn block_cokernel_dims(map: &Matrix, src: &Module, dst: &Module) -> Vec<i64> {
    (0..dst.dims().len())
        .map(|i| {
            let block = map.block(dst.offset(i), src.offset(i), dst.dims()[i], src.dims()[i]);
            (dst.dims()[i] - block.rank()) as i64
        })
        .collect()
}

/// Solves `Φ h_k = θ_k` for all catalog rows exactly over the rationals and
/// requires a consistent, integral solution with full rank.
pub fn solve_phi_system(r: usize, n: usize, rows: &[(String, Vec<i64>, K0Vector)]) -> Result<PhiMatrix> {
    let to_q = |x: i64| BigRational::from_integer(BigInt::from(x));
    // Augmented rows [h | θ].
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|(_, h, th)| h.iter().chain(th.coords()).map(|&x| to_q(x)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(piv) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < r {
        return Err(Error::PhiDeficientSpan {
            rank: pivots.len(),
            needed: r,
        });
    }
    if let Some(bad) = a[row..].iter().position(|rw| rw[r..].iter().any(|x| !x.is_zero())) {
        return Err(Error::PhiInconsistent(format!(
            "catalog relations disagree (residual row {})",
            row + bad
        )));
    }
    // Row j of the reduced system gives Φ applied to the j-th simple.
    let mut out = vec![vec![0i64; r]; n];
    for j in 0..r {
        for i in 0..n {
            let x = &a[j][r + i];
            if !x.is_integer() {
                return Err(Error::PhiInconsistent(format!("non-integral value {x}")));
            }
            let v = x.to_integer();
            out[i][j] = v.to_i64().ok_or_else(|| Error::PhiInconsistent("value out of range".into()))?;
        }
    }
    // Every catalog row must be reproduced exactly.
    let phi = PhiMatrix { rows: out };
    for (name, h, th) in rows {
        if phi.apply(h) != *th {
            return Err(Error::PhiInconsistent(format!("{name}: Φ[H] = {} but Θ = {th}", phi.apply(h))));
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver, Relation};
    use crate::module::is_isomorphic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn data() -> TiltingData {
        let q = Quiver::new(vec!["1", "2"], vec![("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let rels = vec![Relation::monomial(vec!["b", "a"]), Relation::monomial(vec!["a", "b"])];
        let alg = Arc::new(build_algebra(&q, &rels, 101).unwrap());
        let entries = vec![
            ("T1".to_string(), Module::simple(alg.clone(), 0)),
            ("2".to_string(), Module::simple(alg.clone(), 1)),
            ("T2".to_string(), Module::projective(alg.clone(), 0)),
            ("T3".to_string(), Module::projective(alg.clone(), 1)),
        ];
        let mut r = rng();
        let cat = FrobeniusCategory::new(alg, entries, &mut r).unwrap();
        let names: Vec<String> = ["T1", "T2", "T3"].iter().map(|s| s.to_string()).collect();
        TiltingData::new(cat, &names, &mut r).unwrap()
    }

    fn module(d: &TiltingData, name: &str) -> Module {
        d.category().get(name).unwrap().module.clone()
    }

    fn t(v: &[i64]) -> K0Vector {
        K0Vector::new(K0Basis::SummandsOfT, v.to_vec())
    }

    #[test]
    fn endomorphism_algebras() {
        let d = data();
        assert_eq!(d.r(), 1);
        let b = d.endomorphism_algebra();
        assert_eq!(b.dim(), 7);
        assert_eq!(b.cartan_matrix().rows(), &[vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]);
        let euler = b.euler_matrix().unwrap().to_integer().unwrap();
        assert_eq!(euler.rows(), &[vec![0, -1, 1], vec![1, 1, -1], vec![-1, 0, 1]]);
        assert_eq!(d.stable_endomorphism_algebra().dim(), 1);
    }

    #[test]
    fn indices_and_theta() {
        let d = data();
        let m2 = module(&d, "2");
        assert_eq!(d.index(&m2).unwrap(), t(&[-1, 0, 1]));
        assert_eq!(d.op_index(&m2).unwrap(), t(&[-1, 1, 0]));
        assert_eq!(d.theta(&module(&d, "T1")).unwrap(), t(&[0, -1, 1]));
        for e in d.category().catalog() {
            let (a, b) = d.theta_both(&e.module).unwrap();
            assert_eq!(a, b, "{}", e.name);
        }
        assert_eq!(d.phi().column(0), t(&[0, -1, 1]));
    }

    #[test]
    fn summands_have_trivial_index() {
        let d = data();
        for (i, m) in d.summands().iter().enumerate() {
            let mut v = vec![0; 3];
            v[i] = 1;
            assert_eq!(d.index(m).unwrap(), t(&v));
            assert_eq!(d.op_index(m).unwrap(), t(&v));
        }
    }

    #[test]
    fn functors() {
        let d = data();
        let m2 = module(&d, "2");
        let f = d.f_module(&m2);
        assert_eq!(f.module.dim_vector(), vec![0, 0, 1]);
        let h = d.h_module(&module(&d, "T1"));
        assert_eq!(h.module.dim_vector(), vec![1]);
        assert_eq!(d.h_class(&m2), vec![0]);
        let infl = d.inflate(&h.module);
        assert_eq!(infl.dim_vector(), vec![1, 0, 0]);
        let mut r = rng();
        assert!(is_isomorphic(&infl, &d.b_simple(0), &mut r).unwrap());
    }

    #[test]
    fn additivity_on_generated_sequences() {
        let d = data();
        let seqs = d.generate_sequences().unwrap();
        assert!(seqs.len() >= 6);
        for (name, s) in &seqs {
            let c = d.check_index_additivity(s).unwrap();
            assert!(c.holds(), "{name}: {c:?}");
        }
    }

    #[test]
    fn stable_relations() {
        let d = data();
        assert!(d.stable_hom_vanishing_failures().unwrap().is_empty());
        for e in d.category().catalog() {
            let (l, r) = d.stable_phi_sides(&e.module).unwrap();
            assert_eq!(l, r, "{}", e.name);
        }
        assert_eq!(d.stable_coindex(&module(&d, "2")).unwrap().coords(), &[-1]);
        assert_eq!(d.stable_coindex(&module(&d, "T1")).unwrap().coords(), &[1]);
    }

    #[test]
    fn rejects_non_maximal() {
        let d = data();
        let names: Vec<String> = ["T2", "T3"].iter().map(|s| s.to_string()).collect();
        let v = verify_cluster_tilting(d.category(), &names).unwrap();
        assert!(!v.ok);
        let names: Vec<String> = ["T1", "2", "T2", "T3"].iter().map(|s| s.to_string()).collect();
        assert!(!verify_cluster_tilting(d.category(), &names).unwrap().ok);
    }

    #[test]
    fn phi_solver_detects_inconsistency() {
        let t = |v: Vec<i64>| K0Vector::new(K0Basis::SummandsOfT, v);
        let rows = vec![
            ("a".to_string(), vec![1], t(vec![0, -1, 1])),
            ("b".to_string(), vec![0], t(vec![0, 0, 0])),
        ];
        let phi = solve_phi_system(1, 3, &rows).unwrap();
        assert_eq!(phi.column(0).coords(), &[0, -1, 1]);
        let bad = vec![
            ("a".to_string(), vec![1], t(vec![0, -1, 1])),
            ("b".to_string(), vec![2], t(vec![0, 0, 0])),
        ];
        assert!(matches!(solve_phi_system(1, 3, &bad), Err(Error::PhiInconsistent(_))));
        let thin = vec![("b".to_string(), vec![0], t(vec![0, 0, 0]))];
        assert!(matches!(
            solve_phi_system(1, 3, &thin),
            Err(Error::PhiDeficientSpan { rank: 0, needed: 1 })
        ));
        let frac = vec![("a".to_string(), vec![2], t(vec![1, 0, 0]))];
        assert!(matches!(solve_phi_system(1, 3, &frac), Err(Error::PhiInconsistent(_))));
    }
}
