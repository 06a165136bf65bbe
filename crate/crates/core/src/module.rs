//! Finite-dimensional left modules over an [`Algebra`] and their homological
//! toolkit: Hom spaces, projective covers, syzygies, Ext, extensions,
//! Krull–Schmidt decomposition and isomorphism tests.
//!
//! Module bases are block-adapted: the basis of `e_1 M` comes first, then
//! `e_2 M`, and so on. A module map `M → N` is an `N.dim() × M.dim()` matrix.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};
use crate::matrix::{unit_vector, Basis, Matrix};
use crate::poly;

/// Random endomorphisms drawn before a decomposition gives up.
pub const DECOMPOSE_BUDGET: usize = 32;

#[derive(Clone, PartialEq, Eq)]
pub struct Module {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    action: Vec<Matrix>,
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &d in dims {
        acc += d;
        out.push(acc);
    }
    out
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Module {
    /// Validates block support, the unit, and the structure constants.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let m = Module::new_unchecked(algebra, dims, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        let offsets = offsets_of(&dims);
        Module {
            algebra,
            dims,
            offsets,
            action,
        }
    }

    fn invalid(&self, reason: String) -> Error {
        Error::InvalidModule {
            name: format!("{:?}", self.dims),
            reason,
        }
    }

    fn validate(&self) -> Result<()> {
        let alg = &*self.algebra;
        let p = alg.prime();
        let d = self.dim();
        if self.dims.len() != alg.num_vertices() || self.action.len() != alg.dim() {
            return Err(self.invalid("shape does not match the algebra".into()));
        }
        for (b, a) in self.action.iter().enumerate() {
            if a.rows() != d || a.cols() != d || a.prime() != p {
                return Err(self.invalid(format!("action of {} has the wrong shape", alg.labels()[b])));
            }
            let (s, t) = alg.ends(b);
            for i in 0..d {
                for j in 0..d {
                    if a.get(i, j) != 0 && !(self.block(t).contains(&i) && self.block(s).contains(&j)) {
                        return Err(self.invalid(format!(
                            "action of {} leaves its idempotent block",
                            alg.labels()[b]
                        )));
                    }
                }
            }
        }
        let mut unit = Matrix::zeros(d, d, p);
        for &e in alg.idempotents() {
            unit = unit.add(&self.action[e]);
        }
        if unit != Matrix::identity(d, p) {
            return Err(self.invalid("the unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zeros(d, d, p);
                for &(k, c) in alg.product(i, j) {
                    rhs.add_scaled(c, &self.action[k]);
                }
                if lhs != rhs {
                    return Err(self.invalid(format!(
                        "action violates {} * {}",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a module of a quiver algebra from one matrix per arrow; the
    /// matrix of `a: i → j` has shape `dims[j] × dims[i]`.
    pub fn from_arrow_matrices(algebra: Arc<Algebra>, dims: Vec<usize>, arrows: &[Matrix]) -> Result<Self> {
        let pres = algebra
            .presentation()
            .ok_or_else(|| Error::InvalidAlgebra("algebra has no quiver presentation".into()))?
            .clone();
        let p = algebra.prime();
        if dims.len() != algebra.num_vertices() || arrows.len() != pres.quiver.arrows().len() {
            return Err(Error::InvalidModule {
                name: format!("{dims:?}"),
                reason: "dimension vector or arrow count does not match the quiver".into(),
            });
        }
        for (a, arrow) in pres.quiver.arrows().iter().enumerate() {
            let m = &arrows[a];
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(Error::InvalidModule {
                    name: format!("{dims:?}"),
                    reason: format!(
                        "matrix for arrow {} must be {}x{}",
                        arrow.name, dims[arrow.target], dims[arrow.source]
                    ),
                });
            }
        }
        let offsets = offsets_of(&dims);
        let d = offsets[dims.len()];
        let mut action = Vec::with_capacity(algebra.dim());
        for b in 0..algebra.dim() {
            let (s, t) = algebra.ends(b);
            let word = &pres.words[b];
            let block = if word.is_empty() {
                Matrix::identity(dims[s], p)
            } else {
                let mut acc = arrows[word[0]].clone();
                for &a in &word[1..] {
                    acc = acc.mul(&arrows[a]);
                }
                acc
            };
            let mut full = Matrix::zeros(d, d, p);
            full.set_block(offsets[t], offsets[s], &block);
            action.push(full);
        }
        Module::new(algebra, dims, action)
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let p = algebra.prime();
        let n = algebra.num_vertices();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(0, 0, p)).collect();
        Module::new_unchecked(algebra, vec![0; n], action)
    }

    /// The simple module at vertex `v`.
    pub fn simple(algebra: Arc<Algebra>, v: usize) -> Self {
        let p = algebra.prime();
        let mut dims = vec![0; algebra.num_vertices()];
        dims[v] = 1;
        let e = algebra.idempotent(v);
        let action = (0..algebra.dim())
            .map(|b| {
                if b == e {
                    Matrix::identity(1, p)
                } else {
                    Matrix::zeros(1, 1, p)
                }
            })
            .collect();
        Module::new_unchecked(algebra, dims, action)
    }

    /// `A e_v`, with basis the algebra basis elements starting at `v`,
    /// grouped by their target vertex.
    pub fn projective(algebra: Arc<Algebra>, v: usize) -> Self {
        let p = algebra.prime();
        let basis = projective_basis(&algebra, v);
        let mut dims = vec![0; algebra.num_vertices()];
        for &b in &basis {
            dims[algebra.ends(b).1] += 1;
        }
        let pos: std::collections::HashMap<usize, usize> =
            basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let d = basis.len();
        let action = (0..algebra.dim())
            .map(|a| {
                let mut m = Matrix::zeros(d, d, p);
                for (col, &b) in basis.iter().enumerate() {
                    for &(k, c) in algebra.product(a, b) {
                        m.set(pos[&k], col, c);
                    }
                }
                m
            })
            .collect();
        Module::new_unchecked(algebra, dims, action)
    }

    /// The algebra as a left module over itself.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let n = algebra.num_vertices();
        Module::direct_sum_all(
            algebra.clone(),
            (0..n).map(|v| Module::projective(algebra.clone(), v)).collect::<Vec<_>>().iter(),
        )
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn prime(&self) -> u64 {
        self.algebra.prime()
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    /// Index range of `e_v M` inside the module basis.
    pub fn block(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.action[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub(crate) fn vertex_of(&self, i: usize) -> usize {
        (0..self.dims.len()).find(|&v| self.block(v).contains(&i)).expect("index in range")
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        assert!(same_algebra(&self.algebra, &other.algebra), "modules over different algebras");
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let (perm_a, perm_b) = sum_embeddings(&self.dims, &other.dims);
        let d = self.dim() + other.dim();
        let p = self.prime();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(d, d, p);
                for i in 0..x.rows() {
                    for j in 0..x.cols() {
                        m.set(perm_a[i], perm_a[j], x.get(i, j));
                    }
                }
                for i in 0..y.rows() {
                    for j in 0..y.cols() {
                        m.set(perm_b[i], perm_b[j], y.get(i, j));
                    }
                }
                m
            })
            .collect();
        Module::new_unchecked(self.algebra.clone(), dims, action)
    }

    pub fn direct_sum_all<'a>(algebra: Arc<Algebra>, parts: impl Iterator<Item = &'a Module>) -> Module {
        parts.fold(Module::zero(algebra), |acc, m| acc.direct_sum(m))
    }

    /// Inclusion and projection matrices for the summands of `self ⊕ other`.
    pub fn sum_maps(&self, other: &Module) -> SumMaps {
        let p = self.prime();
        let (perm_a, perm_b) = sum_embeddings(&self.dims, &other.dims);
        let d = self.dim() + other.dim();
        let mut inc = [Matrix::zeros(d, self.dim(), p), Matrix::zeros(d, other.dim(), p)];
        for (i, &r) in perm_a.iter().enumerate() {
            inc[0].set(r, i, 1);
        }
        for (i, &r) in perm_b.iter().enumerate() {
            inc[1].set(r, i, 1);
        }
        let proj = [inc[0].transpose(), inc[1].transpose()];
        SumMaps { inc, proj }
    }

    /// `rad M = J M` as a subspace of `M`.
    pub fn radical(&self) -> Basis {
        let p = self.prime();
        let mut rad = Basis::empty(p, self.dim());
        for &r in self.algebra.radical_elements() {
            let a = &self.action[r];
            for j in 0..a.cols() {
                rad.insert(a.column(j));
            }
        }
        rad
    }

    /// Elements killed by the radical.
    pub fn socle(&self) -> Basis {
        let p = self.prime();
        let d = self.dim();
        let gens = self.algebra.generators();
        if gens.is_empty() {
            return Basis::span(p, d, (0..d).map(|i| unit_vector(p, d, i)));
        }
        let stacked = Matrix::vstack(p, d, &gens.iter().map(|&g| &self.action[g]).collect::<Vec<_>>());
        Basis::span(p, d, stacked.kernel_basis())
    }

    /// Dimension vector of `M / rad M`.
    pub fn top_dims(&self) -> Vec<usize> {
        let rad = self.radical();
        let comp = rad.complement_indices();
        let mut out = vec![0; self.dims.len()];
        for i in comp {
            out[self.vertex_of(i)] += 1;
        }
        out
    }

    /// The submodule generated by `gens`, with a block-adapted basis.
    pub fn submodule(&self, gens: impl IntoIterator<Item = Vec<u64>>) -> Submodule {
        let p = self.prime();
        let d = self.dim();
        let nv = self.dims.len();
        let mut blocks: Vec<Basis> = (0..nv).map(|_| Basis::empty(p, d)).collect();
        let mut queue: Vec<Vec<u64>> = Vec::new();
        let push = |v: Vec<u64>, blocks: &mut Vec<Basis>, queue: &mut Vec<Vec<u64>>| {
            for w in 0..nv {
                let mut part = vec![0; d];
                let mut nonzero = false;
                for i in self.block(w) {
                    part[i] = v[i];
                    nonzero |= v[i] != 0;
                }
                if nonzero && blocks[w].insert(part.clone()) {
                    queue.push(part);
                }
            }
        };
        for g in gens {
            push(g, &mut blocks, &mut queue);
        }
        while let Some(v) = queue.pop() {
            for &g in self.algebra.generators() {
                let w = self.action[g].mul_vec(&v);
                push(w, &mut blocks, &mut queue);
            }
        }
        self.submodule_from_blocks(blocks)
    }

    fn submodule_from_blocks(&self, blocks: Vec<Basis>) -> Submodule {
        let p = self.prime();
        let dims: Vec<usize> = blocks.iter().map(Basis::len).collect();
        let cols: Vec<Vec<u64>> = blocks.iter().flat_map(|b| b.vectors().iter().cloned()).collect();
        let inclusion = Matrix::from_columns(p, self.dim(), &cols);
        let sub_offsets = offsets_of(&dims);
        let k = cols.len();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(b, a)| {
                let mut m = Matrix::zeros(k, k, p);
                let (_, t) = self.algebra.ends(b);
                for (j, c) in cols.iter().enumerate() {
                    let img = a.mul_vec(c);
                    if img.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let coords = blocks[t].coordinates(&img).expect("submodule is closed under the action");
                    for (i, &x) in coords.iter().enumerate() {
                        m.set(sub_offsets[t] + i, j, x);
                    }
                }
                m
            })
            .collect();
        Submodule {
            module: Module::new_unchecked(self.algebra.clone(), dims, action),
            inclusion,
            blocks,
            ranges: (0..self.dims.len()).map(|v| self.block(v)).collect(),
        }
    }

    /// `M / U` for a submodule subspace `U`, with the projection `M → M/U`.
    pub fn quotient(&self, sub: &Basis) -> (Module, Matrix) {
        let p = self.prime();
        let d = self.dim();
        let keep = sub.complement_indices();
        let k = keep.len();
        let mut dims = vec![0; self.dims.len()];
        for &i in &keep {
            dims[self.vertex_of(i)] += 1;
        }
        let project = |v: &[u64]| -> Vec<u64> {
            let r = sub.reduce(v);
            keep.iter().map(|&i| r[i]).collect()
        };
        let mut proj = Matrix::zeros(k, d, p);
        for j in 0..d {
            let col = project(&unit_vector(p, d, j));
            for (i, &x) in col.iter().enumerate() {
                proj.set(i, j, x);
            }
        }
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(k, k, p);
                for (j, &src) in keep.iter().enumerate() {
                    let col = project(&a.column(src));
                    for (i, &x) in col.iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        (Module::new_unchecked(self.algebra.clone(), dims, action), proj)
    }

    /// Image of a module map `f: M → N` as a submodule of `N`.
    pub fn image_of(target: &Module, f: &Matrix) -> Submodule {
        target.submodule((0..f.cols()).map(|j| f.column(j)))
    }

    /// Kernel of a module map `f: M → N` as a submodule of `M`.
    pub fn kernel_of(source: &Module, f: &Matrix) -> Submodule {
        source.submodule(f.kernel_basis())
    }

    /// Cokernel of `f: M → N` with the projection from `N`.
    pub fn cokernel_of(target: &Module, f: &Matrix) -> (Module, Matrix) {
        let img = Module::image_of(target, f);
        target.quotient(&img.span())
    }

    pub fn is_homomorphism(&self, target: &Module, f: &Matrix) -> bool {
        if f.rows() != target.dim() || f.cols() != self.dim() {
            return false;
        }
        (0..self.algebra.dim()).all(|b| target.action[b].mul(f) == f.mul(&self.action[b]))
    }

    pub fn identity_map(&self) -> Matrix {
        Matrix::identity(self.dim(), self.prime())
    }

    pub fn is_projective(&self) -> bool {
        self.is_zero() || projective_cover(self).map(|c| c.kernel.module.is_zero()).unwrap_or(false)
    }
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)
    }
}

/// Block-preserving positions of the two summands inside `a ⊕ b`.
fn sum_embeddings(a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut pa = Vec::new();
    let mut pb = Vec::new();
    let mut pos = 0;
    for (&x, &y) in a.iter().zip(b) {
        pa.extend(pos..pos + x);
        pos += x;
        pb.extend(pos..pos + y);
        pos += y;
    }
    (pa, pb)
}

pub struct SumMaps {
    pub inc: [Matrix; 2],
    pub proj: [Matrix; 2],
}

/// `⊕ parts` with the inclusion and projection of each summand.
pub fn direct_sum_with_maps(algebra: &Arc<Algebra>, parts: &[Module]) -> (Module, Vec<Matrix>, Vec<Matrix>) {
    let mut sum = Module::zero(algebra.clone());
    let mut inc: Vec<Matrix> = Vec::new();
    for part in parts {
        let maps = sum.sum_maps(part);
        inc = inc.into_iter().map(|i| maps.inc[0].mul(&i)).collect();
        inc.push(maps.inc[1].clone());
        sum = sum.direct_sum(part);
    }
    let proj = inc.iter().map(Matrix::transpose).collect();
    (sum, inc, proj)
}

/// A space of linear maps modulo a subspace, with chosen representatives
/// for a basis of the quotient.
#[derive(Clone, Debug)]
pub struct MapQuotient {
    rows: usize,
    cols: usize,
    sub: Basis,
    all: Basis,
    reps: Vec<Matrix>,
}

impl MapQuotient {
    /// `span(candidates) / span(sub)`; `sub` must lie in the span of `candidates`.
    pub fn new(p: u64, rows: usize, cols: usize, sub: impl IntoIterator<Item = Matrix>, candidates: &[Matrix]) -> Self {
        let mut sub_basis = Basis::empty(p, rows * cols);
        for s in sub {
            sub_basis.insert(s.flatten());
        }
        let mut all = sub_basis.clone();
        let mut reps = Vec::new();
        for c in candidates {
            if all.insert(c.flatten()) {
                reps.push(c.clone());
            }
        }
        MapQuotient {
            rows,
            cols,
            sub: sub_basis,
            all,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Matrix] {
        &self.reps
    }

    /// Coordinates of `f` modulo the subspace, or `None` if `f` lies outside
    /// the ambient span.
    pub fn coordinates(&self, f: &Matrix) -> Option<Vec<u64>> {
        debug_assert_eq!((f.rows(), f.cols()), (self.rows, self.cols));
        let c = self.all.coordinates(&f.flatten())?;
        Some(c[self.sub.len()..].to_vec())
    }

    pub fn in_subspace(&self, f: &Matrix) -> bool {
        self.sub.contains(&f.flatten())
    }

    pub fn sub_dim(&self) -> usize {
        self.sub.len()
    }
}

/// A submodule with its block-adapted basis and inclusion.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: Module,
    pub inclusion: Matrix,
    blocks: Vec<Basis>,
    ranges: Vec<std::ops::Range<usize>>,
}

impl Submodule {
    /// Coordinates of an ambient vector lying in the submodule.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.module.dim());
        for (b, range) in self.blocks.iter().zip(&self.ranges) {
            let mut part = vec![0; v.len()];
            part[range.clone()].copy_from_slice(&v[range.clone()]);
            out.extend(b.coordinates(&part)?);
        }
        Some(out)
    }

    pub fn span(&self) -> Basis {
        let p = self.inclusion.prime();
        Basis::span(p, self.inclusion.rows(), (0..self.inclusion.cols()).map(|j| self.inclusion.column(j)))
    }
}

/// Basis elements of `A e_v`, grouped by target vertex.
pub fn projective_basis(algebra: &Algebra, v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for t in 0..algebra.num_vertices() {
        out.extend(algebra.between(t, v));
    }
    out
}

/// Checks that both arguments live over the same algebra.
pub fn check_same(m: &Module, n: &Module) -> Result<()> {
    if same_algebra(&m.algebra, &n.algebra) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// A basis of `Hom_A(M, N)` as `N.dim() × M.dim()` matrices.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<Matrix>> {
    check_same(m, n)?;
    Ok(hom_basis(m, n))
}

pub(crate) fn hom_basis(m: &Module, n: &Module) -> Vec<Matrix> {
    let alg = &*m.algebra;
    let p = alg.prime();
    let nv = alg.num_vertices();
    let mut var_off = vec![0; nv + 1];
    for v in 0..nv {
        var_off[v + 1] = var_off[v] + m.dims[v] * n.dims[v];
    }
    let nvars = var_off[nv];
    if nvars == 0 {
        return Vec::new();
    }
    // f_v is n.dims[v] × m.dims[v]; entry (a, c) is variable var_off[v] + a*m.dims[v] + c.
    let var = |v: usize, a: usize, c: usize| var_off[v] + a * m.dims[v] + c;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &g in alg.generators() {
        let (s, t) = alg.ends(g);
        let (ms, mt, ns, nt) = (m.dims[s], m.dims[t], n.dims[s], n.dims[t]);
        if ms == 0 || nt == 0 {
            continue;
        }
        let ng = n.action[g].block(n.offsets[t], n.offsets[s], nt, ns);
        let mg = m.action[g].block(m.offsets[t], m.offsets[s], mt, ms);
        for a in 0..nt {
            for c in 0..ms {
                let mut row = vec![0u64; nvars];
                for k in 0..ns {
                    let x = ng.get(a, k);
                    if x != 0 {
                        let idx = var(s, k, c);
                        row[idx] = add_mod(row[idx], x, p);
                    }
                }
                for k in 0..mt {
                    let x = mg.get(k, c);
                    if x != 0 {
                        let idx = var(t, a, k);
                        row[idx] = sub_mod(row[idx], x, p);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        (0..nvars).map(|i| unit_vector(p, nvars, i)).collect()
    } else {
        Matrix::from_columns(p, nvars, &rows).transpose().kernel_basis()
    };
    sols.into_iter()
        .map(|x| {
            let mut f = Matrix::zeros(n.dim(), m.dim(), p);
            for v in 0..nv {
                for a in 0..n.dims[v] {
                    for c in 0..m.dims[v] {
                        f.set(n.offsets[v] + a, m.offsets[v] + c, x[var(v, a, c)]);
                    }
                }
            }
            f
        })
        .collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    hom_basis(m, n).len()
}

/// A minimal projective cover `P → M` built from a basis of the top of `M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertex of each indecomposable summand of `P`, in order.
    pub vertices: Vec<usize>,
    /// Image in `M` of the idempotent generator of each summand.
    pub generators: Vec<Vec<u64>>,
    pub module: Module,
    /// The epimorphism `P → M`.
    pub map: Matrix,
    /// `ΩM` with its inclusion into `P`.
    pub kernel: Submodule,
}

/// The direct sum `⊕ A e_v` over the listed vertices.
pub fn projective_sum(algebra: &Arc<Algebra>, vertices: &[usize]) -> Module {
    let parts: Vec<Module> = vertices.iter().map(|&v| Module::projective(algebra.clone(), v)).collect();
    Module::direct_sum_all(algebra.clone(), parts.iter())
}

/// The map `⊕ A e_{v_k} → N` sending the generator of the `k`-th summand to `images[k]`.
pub fn map_from_projectives(algebra: &Arc<Algebra>, vertices: &[usize], images: &[Vec<u64>], n: &Module) -> Matrix {
    let p = algebra.prime();
    // Columns of the sum are block-interleaved; rebuild the order used by direct_sum.
    let mut cols_by_vertex: Vec<Vec<Vec<u64>>> = vec![Vec::new(); algebra.num_vertices()];
    for (&v, x) in vertices.iter().zip(images) {
        for t in 0..algebra.num_vertices() {
            for b in algebra.between(t, v) {
                cols_by_vertex[t].push(n.action[b].mul_vec(x));
            }
        }
    }
    let cols: Vec<Vec<u64>> = cols_by_vertex.into_iter().flatten().collect();
    Matrix::from_columns(p, n.dim(), &cols)
}

pub fn projective_cover(m: &Module) -> Result<ProjectiveCover> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(cover_of(m))
}

pub(crate) fn cover_of(m: &Module) -> ProjectiveCover {
    let alg = m.algebra.clone();
    let p = alg.prime();
    let d = m.dim();
    let rad = m.radical();
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for i in rad.complement_indices() {
        vertices.push(m.vertex_of(i));
        generators.push(unit_vector(p, d, i));
    }
    let module = projective_sum(&alg, &vertices);
    let map = map_from_projectives(&alg, &vertices, &generators, m);
    let kernel = Module::kernel_of(&module, &map);
    ProjectiveCover {
        vertices,
        generators,
        module,
        map,
        kernel,
    }
}

/// `ΩM`, the kernel of the projective cover.
pub fn syzygy(m: &Module) -> Module {
    if m.is_zero() {
        return m.clone();
    }
    cover_of(m).kernel.module
}

/// An element of `Ext^1(X, Y)`, stored as a map `ΩX → Y` modulo maps that
/// extend to the projective cover of `X`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    end: Module,
    start: Module,
    cover: Arc<ProjectiveCover>,
    cocycle: Matrix,
}

impl ExtClass {
    /// The third term `X`.
    pub fn end(&self) -> &Module {
        &self.end
    }

    /// The first term `Y`.
    pub fn start(&self) -> &Module {
        &self.start
    }

    pub fn cocycle(&self) -> &Matrix {
        &self.cocycle
    }
}

/// `Ext^1(X, Y)` presented as `Hom(ΩX, Y) / ι*Hom(P, Y)`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    end: Module,
    start: Module,
    cover: Arc<ProjectiveCover>,
    coboundaries: Basis,
    classes: Vec<ExtClass>,
}

impl ExtSpace {
    pub fn end(&self) -> &Module {
        &self.end
    }

    pub fn start(&self) -> &Module {
        &self.start
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn basis(&self) -> &[ExtClass] {
        &self.classes
    }

    /// Coordinates of a cocycle `ΩX → Y` in the chosen basis.
    pub fn coordinates(&self, cocycle: &Matrix) -> Option<Vec<u64>> {
        let mut all = self.coboundaries.clone();
        let n0 = all.len();
        for c in &self.classes {
            all.insert(c.cocycle.flatten());
        }
        let coords = all.coordinates(&cocycle.flatten())?;
        Some(coords[n0..].to_vec())
    }

    pub fn is_coboundary(&self, cocycle: &Matrix) -> bool {
        self.coboundaries.contains(&cocycle.flatten())
    }

    pub fn cover(&self) -> &ProjectiveCover {
        &self.cover
    }
}

/// `Ext^1(X, Y)` with normalized cocycle representatives.
pub fn ext1(x: &Module, y: &Module) -> Result<ExtSpace> {
    check_same(x, y)?;
    let p = x.prime();
    let cover = if x.is_zero() {
        ProjectiveCover {
            vertices: Vec::new(),
            generators: Vec::new(),
            module: x.clone(),
            map: Matrix::zeros(0, 0, p),
            kernel: x.submodule(Vec::new()),
        }
    } else {
        cover_of(x)
    };
    let cover = Arc::new(cover);
    let omega = &cover.kernel;
    let ambient = y.dim() * omega.module.dim();
    let mut coboundaries = Basis::empty(p, ambient);
    for h in hom_basis(&cover.module, y) {
        coboundaries.insert(h.mul(&omega.inclusion).flatten());
    }
    let mut span = coboundaries.clone();
    let mut classes = Vec::new();
    for z in hom_basis(&omega.module, y) {
        let v = z.flatten();
        if span.insert(v) {
            classes.push(z);
        }
    }
    let classes = classes
        .into_iter()
        .map(|z| {
            let mut v = coboundaries.reduce(&z.flatten());
            if let Some(&lead) = v.iter().find(|&&c| c != 0) {
                let inv = inv_mod(lead, p);
                for c in v.iter_mut() {
                    *c = mul_mod(*c, inv, p);
                }
            }
            ExtClass {
                end: x.clone(),
                start: y.clone(),
                cover: cover.clone(),
                cocycle: Matrix::from_rows_raw(p, y.dim(), omega.module.dim(), v),
            }
        })
        .collect();
    Ok(ExtSpace {
        end: x.clone(),
        start: y.clone(),
        cover,
        coboundaries,
        classes,
    })
}

pub fn ext1_dim(x: &Module, y: &Module) -> usize {
    ext1(x, y).map(|e| e.dim()).unwrap_or(0)
}

/// A short exact sequence `0 → A --f--> B --g--> C → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub a: Module,
    pub b: Module,
    pub c: Module,
    pub f: Matrix,
    pub g: Matrix,
}

impl ShortExactSequence {
    /// Checks maps, injectivity, surjectivity and exactness in the middle.
    pub fn new(a: Module, b: Module, c: Module, f: Matrix, g: Matrix) -> Result<Self> {
        check_same(&a, &b)?;
        check_same(&b, &c)?;
        if !a.is_homomorphism(&b, &f) || !b.is_homomorphism(&c, &g) {
            return Err(Error::NotExact("maps are not module homomorphisms".into()));
        }
        if f.rank() != a.dim() {
            return Err(Error::NotExact("first map is not injective".into()));
        }
        if g.rank() != c.dim() {
            return Err(Error::NotExact("second map is not surjective".into()));
        }
        if !g.mul(&f).is_zero() || a.dim() + c.dim() != b.dim() {
            return Err(Error::NotExact("image differs from kernel".into()));
        }
        Ok(ShortExactSequence { a, b, c, f, g })
    }

    /// `0 → A → A ⊕ C → C → 0`.
    pub fn split(a: &Module, c: &Module) -> Self {
        let b = a.direct_sum(c);
        let maps = a.sum_maps(c);
        let [f, _] = maps.inc;
        let [_, g] = maps.proj;
        ShortExactSequence {
            a: a.clone(),
            b,
            c: c.clone(),
            f,
            g,
        }
    }
}

/// The middle term of the extension represented by `delta`, via the pushout
/// of `0 → ΩX → P → X → 0` along the cocycle. Returns `Y → L → X`.
pub fn extension_middle(delta: &ExtClass) -> Result<ShortExactSequence> {
    let space = ext1(&delta.end, &delta.start)?;
    if space.is_coboundary(&delta.cocycle) {
        return Err(Error::SplitExtension);
    }
    Ok(pushout_sequence(delta))
}

fn pushout_sequence(delta: &ExtClass) -> ShortExactSequence {
    let p = delta.end.prime();
    let y = &delta.start;
    let cover = &delta.cover;
    let sum = y.direct_sum(&cover.module);
    let sm = y.sum_maps(&cover.module);
    // Relations (φ(x), -ι(x)) for x in ΩX.
    let phi = sm.inc[0].mul(&delta.cocycle);
    let iota = sm.inc[1].mul(&cover.kernel.inclusion);
    let rel = phi.sub(&iota);
    let rel_span = Basis::span(p, sum.dim(), (0..rel.cols()).map(|j| rel.column(j)));
    let (l, proj) = sum.quotient(&rel_span);
    let f = proj.mul(&sm.inc[0]);
    // L → X is induced by (0, π).
    let pi_on_sum = cover.map.mul(&sm.proj[1]);
    let keep = rel_span.complement_indices();
    let g = Matrix::from_columns(p, delta.end.dim(), &keep.iter().map(|&i| pi_on_sum.column(i)).collect::<Vec<_>>());
    ShortExactSequence {
        a: y.clone(),
        b: l,
        c: delta.end.clone(),
        f,
        g,
    }
}

/// The class in `Ext^1(C, A)` of a short exact sequence, as coordinates in
/// the basis of `ext1(C, A)`.
pub fn class_of_sequence(s: &ShortExactSequence) -> Result<(ExtSpace, Vec<u64>)> {
    let space = ext1(&s.c, &s.a)?;
    let cover = space.cover.clone();
    // Lift each generator image through g.
    let mut lifts = Vec::new();
    for x in &cover.generators {
        let lift = s
            .g
            .solve_vec(x)
            .ok_or_else(|| Error::NotExact("second map is not surjective".into()))?;
        // Keep the lift inside the right idempotent block.
        let v = s.c.vertex_of(x.iter().position(|&c| c != 0).unwrap_or(0));
        let e = s.b.action(s.b.algebra.idempotent(v));
        let lift = e.mul_vec(&lift);
        lifts.push(lift);
    }
    let h = map_from_projectives(s.a.algebra(), &cover.vertices, &lifts, &s.b);
    let through = h.mul(&cover.kernel.inclusion);
    let phi = s
        .f
        .solve(&through)?
        .ok_or_else(|| Error::NotExact("lift does not land in the image of the first map".into()))?;
    let coords = space
        .coordinates(&phi)
        .ok_or_else(|| Error::NotExact("cocycle outside Hom(ΩC, A)".into()))?;
    Ok((space, coords))
}

/// Dimensions of `Ext^i(M, N)` for `i = 0..=k`, from the Hom complex of a
/// minimal projective resolution.
pub fn resolve_and_ext_dims(m: &Module, n: &Module, k: usize) -> Result<Vec<usize>> {
    check_same(m, n)?;
    let p = m.prime();
    // Terms P_0 .. P_{k+1} and differentials P_i → P_{i-1}.
    let mut terms: Vec<Module> = Vec::new();
    let mut diffs: Vec<Matrix> = Vec::new();
    let mut current = m.clone();
    let mut prev_inclusion: Option<Matrix> = None;
    for _ in 0..=k + 1 {
        if current.is_zero() {
            let z = Module::zero(m.algebra.clone());
            if let Some(inc) = prev_inclusion.take() {
                diffs.push(Matrix::zeros(inc.rows(), 0, p));
            }
            terms.push(z);
            continue;
        }
        let cover = cover_of(&current);
        if let Some(inc) = prev_inclusion.take() {
            diffs.push(inc.mul(&cover.map));
        }
        prev_inclusion = Some(cover.kernel.inclusion.clone());
        terms.push(cover.module.clone());
        current = cover.kernel.module.clone();
    }
    // Hom(P_i, N) bases and ranks of δ_i: Hom(P_{i-1}, N) → Hom(P_i, N).
    let homs: Vec<Vec<Matrix>> = terms.iter().map(|t| hom_basis(t, n)).collect();
    let rank_of = |i: usize| -> usize {
        if i == 0 || homs[i - 1].is_empty() || terms[i].is_zero() {
            return 0;
        }
        let d = &diffs[i - 1];
        let mut b = Basis::empty(p, n.dim() * terms[i].dim());
        for h in &homs[i - 1] {
            b.insert(h.mul(d).flatten());
        }
        b.len()
    };
    let ranks: Vec<usize> = (0..=k + 1).map(rank_of).collect();
    Ok((0..=k).map(|i| homs[i].len() - ranks[i + 1] - ranks[i]).collect())
}

/// `Σ_{i=0}^{3} (-1)^i dim Ext^i(M, N)`.
pub fn euler_form_3(m: &Module, n: &Module) -> Result<i64> {
    let dims = resolve_and_ext_dims(m, n, 3)?;
    Ok(dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum())
}

/// `dim Hom(M, N) - dim Ext^1(M, N)`.
pub fn euler_form_1(m: &Module, n: &Module) -> Result<i64> {
    check_same(m, n)?;
    Ok(hom_dim(m, n) as i64 - ext1(m, n)?.dim() as i64)
}

/// `⟨M, N⟩ - ⟨N, M⟩`.
pub fn euler_form_a(m: &Module, n: &Module) -> Result<i64> {
    Ok(euler_form_1(m, n)? - euler_form_1(n, m)?)
}

fn min_poly(f: &Matrix) -> Vec<u64> {
    let p = f.prime();
    let n = f.rows();
    let mut basis = Basis::empty(p, n * n);
    let mut power = Matrix::identity(n, p);
    loop {
        let v = power.flatten();
        if let Some(c) = basis.coordinates(&v) {
            let mut poly: Vec<u64> = c.iter().map(|&x| neg_mod(x, p)).collect();
            poly.push(1);
            return poly;
        }
        basis.insert(v);
        power = power.mul(f);
    }
}

/// Scalar `λ` with `f - λ` nilpotent, if one exists.
fn unique_eigenvalue<R: Rng + ?Sized>(f: &Matrix, rng: &mut R) -> Option<u64> {
    let p = f.prime();
    let mu = min_poly(f);
    let roots = poly::roots(&mu, p, rng);
    if roots.len() != 1 {
        return None;
    }
    let lambda = roots[0];
    let n = f.rows();
    let g = f.sub(&Matrix::identity(n, p).scale(lambda));
    g.pow(n as u64).is_zero().then_some(lambda)
}

/// Decides whether a ring of endomorphisms, given by a basis containing
/// enough to span it, is local with residue field `F_p`. On success returns
/// a basis of its radical.
pub fn local_radical<R: Rng + ?Sized>(end: &[Matrix], rng: &mut R) -> Option<Vec<Matrix>> {
    let first = end.first()?;
    let n = first.rows();
    let p = first.prime();
    let id = Matrix::identity(n, p);
    let mut rad: Vec<Matrix> = Vec::new();
    let mut span = Basis::empty(p, n * n);
    for f in end {
        let lambda = unique_eigenvalue(f, rng)?;
        let r = f.sub(&id.scale(lambda));
        if span.insert(r.flatten()) {
            rad.push(r);
        }
    }
    if rad.len() + 1 != end.len() {
        return None;
    }
    // Two-sided ideal and nilpotent.
    for f in end {
        for r in &rad {
            if !span.contains(&f.mul(r).flatten()) || !span.contains(&r.mul(f).flatten()) {
                return None;
            }
        }
    }
    let mut power = rad.clone();
    for _ in 0..=n {
        if power.iter().all(Matrix::is_zero) {
            return Some(rad);
        }
        let mut next = Vec::new();
        let mut b = Basis::empty(p, n * n);
        for x in &power {
            for r in &rad {
                let y = x.mul(r);
                if b.insert(y.flatten()) {
                    next.push(y);
                }
            }
        }
        power = next;
    }
    None
}

/// Krull–Schmidt decomposition into indecomposables with local
/// endomorphism rings, by Fitting splitting along random endomorphisms.
pub fn decompose<R: Rng + ?Sized>(m: &Module, rng: &mut R) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    let mut draws = 0;
    decompose_into(m, rng, &mut draws, &mut out)?;
    Ok(out)
}

fn decompose_into<R: Rng + ?Sized>(
    m: &Module,
    rng: &mut R,
    draws: &mut usize,
    out: &mut Vec<Module>,
) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let end = hom_basis(m, m);
    if local_radical(&end, rng).is_some() {
        out.push(m.clone());
        return Ok(());
    }
    let p = m.prime();
    let n = m.dim();
    while *draws < DECOMPOSE_BUDGET {
        *draws += 1;
        let mut f = Matrix::zeros(n, n, p);
        for e in &end {
            f.add_scaled(rng.random_range(0..p), e);
        }
        for lambda in poly::roots(&min_poly(&f), p, rng) {
            let g = f.sub(&Matrix::identity(n, p).scale(lambda)).pow(n as u64);
            let rank = g.rank();
            if rank == 0 || rank == n {
                continue;
            }
            let ker = Module::kernel_of(m, &g);
            let img = Module::image_of(m, &g);
            decompose_into(&ker.module, rng, draws, out)?;
            decompose_into(&img.module, rng, draws, out)?;
            return Ok(());
        }
    }
    Err(Error::DecompositionFailed { draws: DECOMPOSE_BUDGET })
}

/// Isomorphism test for two indecomposables with local endomorphism rings.
pub fn indecomposables_isomorphic(x: &Module, y: &Module) -> bool {
    if x.dims != y.dims {
        return false;
    }
    let fs = hom_basis(x, y);
    let gs = hom_basis(y, x);
    fs.iter().any(|f| gs.iter().any(|g| g.mul(f).inverse().is_some()))
}

/// Decides `M ≅ N` by matching indecomposable summands.
pub fn is_isomorphic<R: Rng + ?Sized>(m: &Module, n: &Module, rng: &mut R) -> Result<bool> {
    check_same(m, n)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    let xs = decompose(m, rng)?;
    let mut ys = decompose(n, rng)?;
    for x in &xs {
        match ys.iter().position(|y| indecomposables_isomorphic(x, y)) {
            Some(i) => {
                ys.swap_remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(ys.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Quiver, Relation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn preprojective_a2() -> Arc<Algebra> {
        let q = Quiver::new(vec!["1", "2"], vec![("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let rels = vec![Relation::monomial(vec!["b", "a"]), Relation::monomial(vec!["a", "b"])];
        Arc::new(build_algebra(&q, &rels, 101).unwrap())
    }

    fn rep(alg: &Arc<Algebra>, dims: [usize; 2], a: i64, b: i64) -> Module {
        let p = alg.prime();
        let m = |v: i64, r: usize, c: usize| {
            let mut out = Matrix::zeros(r, c, p);
            if r * c == 1 {
                out.set(0, 0, v as u64);
            }
            out
        };
        Module::from_arrow_matrices(
            alg.clone(),
            dims.to_vec(),
            &[m(a, dims[1], dims[0]), m(b, dims[0], dims[1])],
        )
        .unwrap()
    }

    struct Fx {
        s1: Module,
        s2: Module,
        t2: Module,
        t3: Module,
    }

    fn fixture() -> Fx {
        let alg = preprojective_a2();
        Fx {
            s1: rep(&alg, [1, 0], 0, 0),
            s2: rep(&alg, [0, 1], 0, 0),
            t2: rep(&alg, [1, 1], 1, 0),
            t3: rep(&alg, [1, 1], 0, 1),
        }
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn hom_dimensions() {
        let f = fixture();
        assert_eq!(hom_dim(&f.t3, &f.s2), 1);
        assert_eq!(hom_dim(&f.t2, &f.s2), 0);
        assert_eq!(hom_dim(&f.s1, &f.s1), 1);
        for h in hom_space(&f.t3, &f.s2).unwrap() {
            assert!(f.t3.is_homomorphism(&f.s2, &h));
        }
    }

    #[test]
    fn projectives_match_fixture() {
        let alg = preprojective_a2();
        let f = fixture();
        let p1 = Module::projective(alg.clone(), 0);
        let p2 = Module::projective(alg.clone(), 1);
        let mut r = rng();
        assert!(is_isomorphic(&p1, &f.t2, &mut r).unwrap());
        assert!(is_isomorphic(&p2, &f.t3, &mut r).unwrap());
        assert_eq!(Module::regular(alg).dim(), 4);
    }

    #[test]
    fn ext_dimensions() {
        let f = fixture();
        assert_eq!(ext1(&f.s1, &f.s2).unwrap().dim(), 1);
        assert_eq!(ext1(&f.s2, &f.s1).unwrap().dim(), 1);
        assert_eq!(ext1(&f.s1, &f.s1).unwrap().dim(), 0);
        assert_eq!(ext1(&f.t2, &f.s1).unwrap().dim(), 0);
        assert_eq!(ext1(&f.t3, &f.s2).unwrap().dim(), 0);
    }

    #[test]
    fn covers() {
        let f = fixture();
        let mut r = rng();
        let c = projective_cover(&f.s2).unwrap();
        assert!(is_isomorphic(&c.module, &f.t3, &mut r).unwrap());
        assert!(is_isomorphic(&c.kernel.module, &f.s1, &mut r).unwrap());
        let c = projective_cover(&f.t2).unwrap();
        assert!(c.kernel.module.is_zero());
        let sum = f.s1.direct_sum(&f.s2);
        let c = projective_cover(&sum).unwrap();
        assert!(is_isomorphic(&c.module, &f.t2.direct_sum(&f.t3), &mut r).unwrap());
        assert!(is_isomorphic(&c.kernel.module, &f.s2.direct_sum(&f.s1), &mut r).unwrap());
        assert!(matches!(
            projective_cover(&Module::zero(preprojective_a2())),
            Err(Error::ZeroModule)
        ));
    }

    #[test]
    fn extension_middles() {
        let f = fixture();
        let mut r = rng();
        let e = ext1(&f.s1, &f.s2).unwrap();
        let ses = extension_middle(&e.basis()[0]).unwrap();
        assert!(is_isomorphic(&ses.b, &f.t2, &mut r).unwrap());
        ShortExactSequence::new(ses.a.clone(), ses.b.clone(), ses.c.clone(), ses.f.clone(), ses.g.clone())
            .unwrap();
        let (_, coords) = class_of_sequence(&ses).unwrap();
        assert_eq!(coords, vec![1]);
        let e = ext1(&f.s2, &f.s1).unwrap();
        let ses = extension_middle(&e.basis()[0]).unwrap();
        assert!(is_isomorphic(&ses.b, &f.t3, &mut r).unwrap());
    }

    #[test]
    fn split_class_rejected() {
        let f = fixture();
        let split = ShortExactSequence::split(&f.s2, &f.s1);
        let (_, coords) = class_of_sequence(&split).unwrap();
        assert_eq!(coords, vec![0]);
        let e = ext1(&f.s1, &f.s2).unwrap();
        let mut zero = e.basis()[0].clone();
        zero.cocycle = zero.cocycle.scale(0);
        assert!(matches!(extension_middle(&zero), Err(Error::SplitExtension)));
    }

    #[test]
    fn higher_ext() {
        let f = fixture();
        let dims = resolve_and_ext_dims(&f.s1, &f.s1, 3).unwrap();
        assert_eq!(dims, vec![1, 0, 1, 0]);
        let dims = resolve_and_ext_dims(&f.t2, &f.s1, 3).unwrap();
        assert_eq!(dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn euler_forms() {
        let f = fixture();
        assert_eq!(euler_form_a(&f.t2, &f.t2).unwrap(), 0);
        assert_eq!(euler_form_1(&f.s1, &f.s2).unwrap(), -1);
    }

    #[test]
    fn decomposition() {
        let f = fixture();
        let mut r = rng();
        let sum = f.t2.direct_sum(&f.s1);
        let pieces = decompose(&sum, &mut r).unwrap();
        assert_eq!(pieces.len(), 2);
        assert_eq!(decompose(&f.t2, &mut r).unwrap().len(), 1);
        assert!(decompose(&Module::zero(preprojective_a2()), &mut r).unwrap().is_empty());
        let big = f.s1.direct_sum(&f.s1).direct_sum(&f.t3).direct_sum(&f.s2);
        let pieces = decompose(&big, &mut r).unwrap();
        assert_eq!(pieces.len(), 4);
        for piece in &pieces {
            assert_eq!(decompose(piece, &mut r).unwrap().len(), 1);
        }
        assert!(is_isomorphic(&big, &f.s2.direct_sum(&f.t3).direct_sum(&f.s1).direct_sum(&f.s1), &mut r).unwrap());
        assert!(!is_isomorphic(&f.s1, &f.s2, &mut r).unwrap());
        assert!(!is_isomorphic(&f.t2, &f.s1.direct_sum(&f.s2), &mut r).unwrap());
    }

    #[test]
    fn socle_and_top() {
        let f = fixture();
        assert_eq!(f.t2.socle().len(), 1);
        assert_eq!(f.t2.top_dims(), vec![1, 0]);
        assert_eq!(f.t3.top_dims(), vec![0, 1]);
    }
}
