//! Finite-dimensional basic algebras over `F_p`.
//!
//! An [`Algebra`] is stored by structure constants on a basis in which every
//! element is homogeneous for the chosen primitive idempotents: basis element
//! `b` with ends `(s, t)` satisfies `b = e_t b e_s`. For bound quiver algebras
//! the basis consists of paths, and a path written `a b` means "first `b`,
//! then `a`", so modules are left modules and arrows act by matrices.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{add_mod, check_prime, mul_mod, reduce_i64};
use crate::matrix::{unit_vector, Basis};

/// Paths longer than this without the quotient vanishing are rejected.
pub const DEFAULT_PATH_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<S: Into<String>>(vertices: Vec<S>, arrows: Vec<(S, S, S)>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let find = |v: &str| {
            vertices
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {v}")))
        };
        let mut out = Vec::new();
        for (name, from, to) in arrows {
            let (name, from, to): (String, String, String) = (name.into(), from.into(), to.into());
            if out.iter().any(|a: &Arrow| a.name == name) || vertices.contains(&name) {
                return Err(Error::InvalidQuiver(format!("duplicate name {name}")));
            }
            out.push(Arrow {
                name,
                source: find(&from)?,
                target: find(&to)?,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Ends `(source, target)` of a written word, or `None` if not composable.
    /// The rightmost arrow is applied first.
    fn word_ends(&self, word: &[usize]) -> Option<(usize, usize)> {
        let (&last, _) = word.split_last()?;
        for pair in word.windows(2) {
            if self.arrows[pair[0]].source != self.arrows[pair[1]].target {
                return None;
            }
        }
        Some((self.arrows[last].source, self.arrows[word[0]].target))
    }

    fn word_label(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A linear combination of paths, each given by arrow names in written order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Vec<String>, i64)>,
}

impl Relation {
    pub fn monomial<S: Into<String>>(path: Vec<S>) -> Self {
        Relation {
            terms: vec![(path.into_iter().map(Into::into).collect(), 1)],
        }
    }

    pub fn new<S: Into<String>>(terms: Vec<(Vec<S>, i64)>) -> Self {
        Relation {
            terms: terms
                .into_iter()
                .map(|(p, c)| (p.into_iter().map(Into::into).collect(), c))
                .collect(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c}*{}", p.join("*")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// How a quiver algebra's basis elements are written as paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    /// Written arrow word per basis element; empty for trivial paths.
    pub words: Vec<Vec<usize>>,
}

/// Square integer matrix indexed by the idempotents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
        IntMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).take(self.n).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j);
            }
        }
        IntMatrix { n, data }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    data[i * n + j] += self.get(i, k) * rhs.get(k, j);
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Exact inverse over the rationals.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<Rational64>>> {
        let n = self.n;
        let mut a: Vec<Vec<Rational64>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            Rational64::from_integer(self.get(i, j))
                        } else if j - n == i {
                            Rational64::one()
                        } else {
                            Rational64::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, piv);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= inv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c];
                    let pivot_row = a[c].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            write!(f, "[{} ]", cells.join(""))?;
        }
        Ok(())
    }
}

/// Sparse structure-constant row: `(basis index, coefficient)` pairs.
pub type Combination = Vec<(usize, u64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    p: u64,
    labels: Vec<String>,
    vertex_labels: Vec<String>,
    ends: Vec<(usize, usize)>,
    idempotents: Vec<usize>,
    mult: Vec<Combination>,
    radical: Vec<usize>,
    generators: Vec<usize>,
    presentation: Option<Presentation>,
}

/// Everything needed to assemble an [`Algebra`] from structure constants.
pub struct AlgebraData {
    pub prime: u64,
    pub labels: Vec<String>,
    pub vertex_labels: Vec<String>,
    /// `(source, target)` vertex of each basis element.
    pub ends: Vec<(usize, usize)>,
    /// Basis index of the idempotent at each vertex.
    pub idempotents: Vec<usize>,
    /// Row-major `dim × dim` table of products `b_i * b_j`.
    pub mult: Vec<Combination>,
    /// Basis elements spanning the Jacobson radical.
    pub radical: Vec<usize>,
    /// Radical elements that generate the algebra together with the idempotents.
    pub generators: Vec<usize>,
    pub presentation: Option<Presentation>,
}

impl Algebra {
    /// Assembles and validates an algebra: homogeneity, orthogonal idempotents
    /// summing to one, and associativity on every basis triple.
    pub fn from_data(data: AlgebraData) -> Result<Self> {
        let d = data.labels.len();
        let m = data.vertex_labels.len();
        let fail = |msg: String| Err(Error::InvalidAlgebra(msg));
        if data.ends.len() != d || data.mult.len() != d * d || data.idempotents.len() != m {
            return fail("inconsistent table sizes".into());
        }
        if data.ends.iter().any(|&(s, t)| s >= m || t >= m) {
            return fail("basis element with invalid ends".into());
        }
        let alg = Algebra {
            p: data.prime,
            labels: data.labels,
            vertex_labels: data.vertex_labels,
            ends: data.ends,
            idempotents: data.idempotents,
            mult: data.mult,
            radical: data.radical,
            generators: data.generators,
            presentation: data.presentation,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let p = self.p;
        for (v, &e) in self.idempotents.iter().enumerate() {
            if self.ends[e] != (v, v) {
                return Err(Error::InvalidAlgebra(format!(
                    "idempotent {} is not at vertex {}",
                    self.labels[e], self.vertex_labels[v]
                )));
            }
        }
        for i in 0..d {
            let (s, t) = self.ends[i];
            let ei = unit_vector(p, d, i);
            if self.mul_vectors(&unit_vector(p, d, self.idempotents[t]), &ei) != ei
                || self.mul_vectors(&ei, &unit_vector(p, d, self.idempotents[s])) != ei
            {
                return Err(Error::InvalidAlgebra(format!(
                    "basis element {} is not homogeneous for its idempotents",
                    self.labels[i]
                )));
            }
            for (v, &e) in self.idempotents.iter().enumerate() {
                let left = self.product(e, i);
                if v != t && !left.is_empty() {
                    return Err(Error::InvalidAlgebra(format!(
                        "e_{} * {} is nonzero",
                        self.vertex_labels[v], self.labels[i]
                    )));
                }
                let right = self.product(i, e);
                if v != s && !right.is_empty() {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} * e_{} is nonzero",
                        self.labels[i], self.vertex_labels[v]
                    )));
                }
            }
        }
        for (k, &r) in self.radical.iter().enumerate() {
            if r >= d || self.idempotents.contains(&r) || self.radical[..k].contains(&r) {
                return Err(Error::InvalidAlgebra("bad radical basis".into()));
            }
        }
        if self.generators.iter().any(|g| !self.radical.contains(g)) {
            return Err(Error::InvalidAlgebra("generators must lie in the radical".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j);
                for k in 0..d {
                    let jk = self.product(j, k);
                    let left = self.mul_combination_right(&ij, k);
                    let right = self.mul_combination_left(i, &jk);
                    if left != right {
                        return Err(Error::NonAssociative(format!(
                            "{}, {}, {}",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    /// `(source, target)` of a basis element.
    pub fn ends(&self, b: usize) -> (usize, usize) {
        self.ends[b]
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn radical_elements(&self) -> &[usize] {
        &self.radical
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// Structure constants of `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &Combination {
        &self.mult[i * self.dim() + j]
    }

    fn mul_combination_right(&self, lhs: &Combination, k: usize) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0; self.dim()];
        for &(a, c) in lhs {
            for &(b, c2) in self.product(a, k) {
                out[b] = add_mod(out[b], mul_mod(c, c2, p), p);
            }
        }
        out
    }

    fn mul_combination_left(&self, i: usize, rhs: &Combination) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0; self.dim()];
        for &(a, c) in rhs {
            for &(b, c2) in self.product(i, a) {
                out[b] = add_mod(out[b], mul_mod(c, c2, p), p);
            }
        }
        out
    }

    /// Product of two elements given in basis coordinates.
    pub fn mul_vectors(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0; self.dim()];
        for (i, &xi) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                let c = mul_mod(xi, yj, p);
                for &(k, s) in self.product(i, j) {
                    out[k] = add_mod(out[k], mul_mod(c, s, p), p);
                }
            }
        }
        out
    }

    /// Basis elements of `e_i A e_j`.
    pub fn between(&self, target: usize, source: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&b| self.ends[b] == (source, target))
    }

    /// Entry `(i, j)` is `dim e_i A e_j`, the multiplicity of `S_i` in `P_j`.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let m = self.num_vertices();
        let mut rows = vec![vec![0i64; m]; m];
        for &(s, t) in &self.ends {
            rows[t][s] += 1;
        }
        IntMatrix::from_rows(&rows)
    }

    /// `(C^{-1})^T` for the Cartan matrix `C`, exactly over the rationals.
    pub fn euler_matrix(&self) -> Result<EulerMatrix> {
        let inv = self.cartan_matrix().inverse_rational().ok_or(Error::SingularCartan)?;
        let n = inv.len();
        let entries = (0..n).map(|i| (0..n).map(|j| inv[j][i]).collect()).collect();
        Ok(EulerMatrix { entries })
    }

    /// `rad A, rad^2 A, ...` up to the last nonzero power, as subspaces of `A`.
    pub fn radical_series(&self) -> Vec<Basis> {
        let d = self.dim();
        let p = self.p;
        let rad = Basis::span(p, d, self.radical.iter().map(|&r| unit_vector(p, d, r)));
        let mut series = Vec::new();
        let mut current = rad.clone();
        while !current.is_empty() {
            series.push(current.clone());
            let mut next = Basis::empty(p, d);
            for x in current.vectors() {
                for &r in &self.radical {
                    next.insert(self.mul_vectors(x, &unit_vector(p, d, r)));
                }
            }
            current = next;
        }
        series
    }

    /// Rebuilds the same algebra over another prime, when it has a quiver presentation.
    pub fn presented_relations(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }
}

/// The Euler matrix `(C^{-1})^T`; integral whenever the Cartan matrix is
/// unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerMatrix {
    entries: Vec<Vec<Rational64>>,
}

impl EulerMatrix {
    pub fn entries(&self) -> &[Vec<Rational64>] {
        &self.entries
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        let rows: Option<Vec<Vec<i64>>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
            .collect();
        rows.map(|r| IntMatrix::from_rows(&r))
    }
}

struct Degree {
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    ideal: Basis,
}

impl Degree {
    /// Normal form of a degree-homogeneous combination: residual on non-pivot paths.
    fn normal_form(&self, v: &[u64]) -> Vec<u64> {
        self.ideal.reduce(v)
    }
}

/// Builds `kQ / I` for homogeneous admissible relations by eliminating
/// degree by degree until every path of some length lies in the ideal.
pub fn build_algebra(quiver: &Quiver, relations: &[Relation], p: u64) -> Result<Algebra> {
    build_algebra_bounded(quiver, relations, p, DEFAULT_PATH_BOUND)
}

pub fn build_algebra_bounded(
    quiver: &Quiver,
    relations: &[Relation],
    p: u64,
    bound: usize,
) -> Result<Algebra> {
    check_prime(p)?;
    // (degree, word -> coefficient)
    let mut parsed: Vec<(usize, Vec<(Vec<usize>, u64)>)> = Vec::new();
    for rel in relations {
        let mut terms = Vec::new();
        let mut degree = None;
        let mut ends = None;
        for (path, c) in &rel.terms {
            let word: Vec<usize> = path
                .iter()
                .map(|n| {
                    quiver
                        .arrow_index(n)
                        .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {n} in relation {rel}")))
                })
                .collect::<Result<_>>()?;
            let c = reduce_i64(*c, p);
            if c == 0 {
                continue;
            }
            if word.len() < 2 {
                return Err(Error::NonAdmissibleRelation(rel.to_string()));
            }
            let e = quiver
                .word_ends(&word)
                .ok_or_else(|| Error::InvalidQuiver(format!("path {path:?} is not composable")))?;
            if *ends.get_or_insert(e) != e {
                return Err(Error::InvalidQuiver(format!(
                    "relation {rel} mixes paths with different endpoints"
                )));
            }
            if *degree.get_or_insert(word.len()) != word.len() {
                return Err(Error::InvalidQuiver(format!(
                    "relation {rel} is not homogeneous in path length"
                )));
            }
            terms.push((word, c));
        }
        if let Some(deg) = degree {
            parsed.push((deg, terms));
        }
    }

    let m = quiver.vertices.len();
    let na = quiver.arrows.len();
    let mut degrees: Vec<Degree> = Vec::new();
    // Degree 1: arrows, never in the ideal.
    let words1: Vec<Vec<usize>> = (0..na).map(|a| vec![a]).collect();
    degrees.push(Degree {
        index: words1.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect(),
        ideal: Basis::empty(p, na),
        words: words1,
    });
    loop {
        let prev = degrees.last().expect("degree 1 present");
        if prev.ideal.len() == prev.words.len() {
            break;
        }
        let d = degrees.len() + 1;
        if d > bound {
            return Err(Error::InfiniteDimensional { bound });
        }
        let mut words = Vec::new();
        for w in &prev.words {
            for a in 0..na {
                let mut nw = vec![a];
                nw.extend_from_slice(w);
                if quiver.word_ends(&nw).is_some() {
                    words.push(nw);
                }
            }
        }
        words.sort();
        let index: HashMap<Vec<usize>, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let n = words.len();
        let mut ideal = Basis::empty(p, n);
        for v in prev.ideal.vectors() {
            for a in 0..na {
                let mut left = vec![0; n];
                let mut right = vec![0; n];
                for (k, &c) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
                    let w = &prev.words[k];
                    let mut lw = vec![a];
                    lw.extend_from_slice(w);
                    if let Some(&i) = index.get(&lw) {
                        left[i] = add_mod(left[i], c, p);
                    }
                    let mut rw = w.clone();
                    rw.push(a);
                    if let Some(&i) = index.get(&rw) {
                        right[i] = add_mod(right[i], c, p);
                    }
                }
                ideal.insert(left);
                ideal.insert(right);
            }
        }
        for (deg, terms) in &parsed {
            if *deg == d {
                let mut v = vec![0; n];
                for (w, c) in terms {
                    let i = index[w];
                    v[i] = add_mod(v[i], *c, p);
                }
                ideal.insert(v);
            }
        }
        degrees.push(Degree { words, index, ideal });
    }
    let max_rel = parsed.iter().map(|(d, _)| *d).max().unwrap_or(0);
    if max_rel > degrees.len() {
        // Relations of degree beyond the vanishing point are automatically in the ideal.
    }

    // Basis: trivial paths, then non-pivot paths degree by degree.
    let mut labels: Vec<String> = quiver.vertices.iter().map(|v| format!("e{v}")).collect();
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut ends: Vec<(usize, usize)> = (0..m).map(|v| (v, v)).collect();
    let mut degree_of: Vec<usize> = vec![0; m];
    // position of each (degree, path index) in the algebra basis
    let mut position: Vec<HashMap<usize, usize>> = vec![HashMap::new(); degrees.len() + 1];
    for (di, deg) in degrees.iter().enumerate() {
        for k in deg.ideal.complement_indices() {
            let w = &deg.words[k];
            position[di + 1].insert(k, labels.len());
            labels.push(quiver.word_label(w));
            ends.push(quiver.word_ends(w).expect("composable"));
            words.push(w.clone());
            degree_of.push(di + 1);
        }
    }
    let dim = labels.len();
    let mut mult = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let (si, ti) = ends[i];
            let (sj, tj) = ends[j];
            if si != tj {
                continue;
            }
            let _ = (ti, sj);
            let combo: Combination = if words[i].is_empty() {
                vec![(j, 1)]
            } else if words[j].is_empty() {
                vec![(i, 1)]
            } else {
                let deg = degree_of[i] + degree_of[j];
                if deg > degrees.len() {
                    Vec::new()
                } else {
                    let level = &degrees[deg - 1];
                    let mut w = words[i].clone();
                    w.extend_from_slice(&words[j]);
                    let k = level.index[&w];
                    let nf = level.normal_form(&unit_vector(p, level.words.len(), k));
                    nf.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(idx, &c)| (position[deg][&idx], c))
                        .collect()
                }
            };
            mult[i * dim + j] = combo;
        }
    }
    let radical: Vec<usize> = (m..dim).collect();
    let generators: Vec<usize> = (m..dim).filter(|&b| words[b].len() == 1).collect();
    Algebra::from_data(AlgebraData {
        prime: p,
        labels,
        vertex_labels: quiver.vertices.clone(),
        ends,
        idempotents: (0..m).collect(),
        mult,
        radical,
        generators,
        presentation: Some(Presentation {
            quiver: quiver.clone(),
            words,
        }),
    })
}

/// True iff every indecomposable projective is injective, decided by Baer's
/// criterion: `Ext^1(S_i, P_j) = 0` for all simples and projectives.
pub fn is_self_injective(algebra: &Arc<Algebra>) -> bool {
    use crate::module::{ext1_dim, Module};
    let n = algebra.num_vertices();
    let projectives: Vec<Module> = (0..n).map(|j| Module::projective(algebra.clone(), j)).collect();
    (0..n).all(|i| {
        let s = Module::simple(algebra.clone(), i);
        projectives.iter().all(|pj| ext1_dim(&s, pj) == 0)
    })
}

/// `k × ... × k` with `n` factors.
pub fn semisimple(n: usize, p: u64) -> Result<Algebra> {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let q = Quiver::new(vertices, Vec::<(String, String, String)>::new())?;
    build_algebra(&q, &[], p)
}

pub type AlgebraRef = Arc<Algebra>;

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_b(p: u64) -> Algebra {
        // gamma: 1->2, beta: 2->3, alpha: 3->1 with alpha*beta = beta*gamma = 0
        let q = Quiver::new(
            vec!["1", "2", "3"],
            vec![("gamma", "1", "2"), ("beta", "2", "3"), ("alpha", "3", "1")],
        )
        .unwrap();
        let rels = vec![
            Relation::monomial(vec!["alpha", "beta"]),
            Relation::monomial(vec!["beta", "gamma"]),
        ];
        build_algebra(&q, &rels, p).unwrap()
    }

    fn preprojective_a2(p: u64) -> Algebra {
        let q = Quiver::new(vec!["1", "2"], vec![("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let rels = vec![Relation::monomial(vec!["b", "a"]), Relation::monomial(vec!["a", "b"])];
        build_algebra(&q, &rels, p).unwrap()
    }

    #[test]
    fn cyclic_quiver_dimension_matches_cartan_total() {
        let b = cyclic_b(101);
        assert_eq!(b.dim(), 7);
        let c = b.cartan_matrix();
        let total: i64 = c.rows().iter().flatten().sum();
        assert_eq!(total as usize, b.dim());
    }

    #[test]
    fn path_algebra_a2() {
        let q = Quiver::new(vec!["1", "2"], vec![("a", "1", "2")]).unwrap();
        let a = build_algebra(&q, &[], 101).unwrap();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn preprojective_a2_dimension() {
        assert_eq!(preprojective_a2(101).dim(), 4);
    }

    #[test]
    fn cartan_examples() {
        let b = cyclic_b(101);
        assert_eq!(
            b.cartan_matrix().rows(),
            vec![vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]
        );
        assert_eq!(semisimple(3, 101).unwrap().cartan_matrix(), IntMatrix::identity(3));
        assert_eq!(preprojective_a2(101).cartan_matrix().rows(), vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn euler_examples() {
        let b = cyclic_b(101);
        let e = b.euler_matrix().unwrap().to_integer().unwrap();
        assert_eq!(e.rows(), vec![vec![0, -1, 1], vec![1, 1, -1], vec![-1, 0, 1]]);
        assert_eq!(e.mul(&b.cartan_matrix().transpose()), IntMatrix::identity(3));
        let inv = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).inverse_rational().unwrap();
        let euler: Vec<Vec<i64>> = (0..2).map(|i| (0..2).map(|j| inv[j][i].to_integer()).collect()).collect();
        assert_eq!(euler, vec![vec![1, 0], vec![-1, 1]]);
        assert!(matches!(preprojective_a2(101).euler_matrix(), Err(Error::SingularCartan)));
    }

    #[test]
    fn radical_series_examples() {
        assert!(semisimple(2, 101).unwrap().radical_series().is_empty());
        let dims: Vec<usize> = cyclic_b(101).radical_series().iter().map(Basis::len).collect();
        assert_eq!(dims, vec![4, 1]);
        let dims: Vec<usize> = preprojective_a2(101).radical_series().iter().map(Basis::len).collect();
        assert_eq!(dims, vec![2]);
    }

    #[test]
    fn self_injectivity() {
        assert!(is_self_injective(&Arc::new(preprojective_a2(101))));
        let q = Quiver::new(vec!["1", "2"], vec![("a", "1", "2")]).unwrap();
        assert!(!is_self_injective(&Arc::new(build_algebra(&q, &[], 101).unwrap())));
        assert!(is_self_injective(&Arc::new(semisimple(1, 101).unwrap())));
        assert!(!is_self_injective(&Arc::new(cyclic_b(101))));
    }

    #[test]
    fn non_admissible_relation_rejected() {
        let q = Quiver::new(vec!["1", "2"], vec![("a", "1", "2")]).unwrap();
        let err = build_algebra(&q, &[Relation::monomial(vec!["a"])], 101).unwrap_err();
        assert!(matches!(err, Error::NonAdmissibleRelation(_)));
    }

    #[test]
    fn infinite_dimensional_rejected() {
        let q = Quiver::new(vec!["1"], vec![("x", "1", "1")]).unwrap();
        let err = build_algebra_bounded(&q, &[], 101, 10).unwrap_err();
        assert!(matches!(err, Error::InfiniteDimensional { bound: 10 }));
    }

    #[test]
    fn commutativity_relation_identifies_paths() {
        // Preprojective relation at the middle vertex of A3: a1*b1 = b2*a2.
        let q = Quiver::new(
            vec!["1", "2", "3"],
            vec![("a1", "1", "2"), ("b1", "2", "1"), ("a2", "2", "3"), ("b2", "3", "2")],
        )
        .unwrap();
        let rels = vec![
            Relation::monomial(vec!["b1", "a1"]),
            Relation::new(vec![(vec!["a1", "b1"], 1), (vec!["b2", "a2"], -1)]),
            Relation::monomial(vec!["a2", "b2"]),
        ];
        let a = build_algebra(&q, &rels, 101).unwrap();
        assert_eq!(a.dim(), 10);
        assert_eq!(
            a.cartan_matrix().rows(),
            vec![vec![1, 1, 1], vec![1, 2, 1], vec![1, 1, 1]]
        );
    }
}
