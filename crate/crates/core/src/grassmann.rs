//! Quiver Grassmannians over small prime fields: point counts by brute-force
//! enumeration and Euler characteristics by interpolating those counts in `q`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{add_mod, is_prime, mul_mod, primes_after};
use crate::matrix::{Basis, Matrix};
use crate::module::Module;

/// Largest module dimension accepted by the enumerator.
pub const DEFAULT_ENUM_CAP: usize = 8;

/// Primes used for point counts unless more are needed.
pub const DEFAULT_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

/// All `k`-dimensional subspaces of `F_q^d` as lists of RREF basis rows.
fn subspaces(q: u64, d: usize, k: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for pivots in combinations(d, k) {
        // Free positions: row i, columns after its pivot that are not pivots.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| {
                let pivots = &pivots;
                (pc + 1..d).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![0u64; d]; k];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            for (&(i, c), &x) in free.iter().zip(&digits) {
                rows[i][c] = x;
            }
            out.push(rows);
            // Odometer over F_q^free.
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Generator action restricted to a pair of vertex blocks.
struct Arrow {
    s: usize,
    t: usize,
    block: Matrix,
}

fn arrows(m: &Module) -> Vec<Arrow> {
    let alg = m.algebra();
    alg.generators()
        .iter()
        .filter_map(|&b| {
            let (s, t) = alg.ends(b);
            let (ds, dt) = (m.dims()[s], m.dims()[t]);
            (ds > 0 && dt > 0).then(|| Arrow {
                s,
                t,
                block: m.action(b).block(m.offset(t), m.offset(s), dt, ds),
            })
        })
        .filter(|a| !a.block.is_zero())
        .collect()
}

fn apply(block: &Matrix, v: &[u64], p: u64) -> Vec<u64> {
    (0..block.rows())
        .map(|i| (0..block.cols()).fold(0, |acc, j| add_mod(acc, mul_mod(block.get(i, j), v[j], p), p)))
        .collect()
}

fn check_cap(m: &Module, cap: usize) -> Result<()> {
    if m.dim() > cap {
        return Err(Error::EnumerationCap { dim: m.dim(), cap });
    }
    Ok(())
}

/// Number of submodules of `m` with dimension vector `e`.
pub fn count_submodules_of_class(m: &Module, e: &[usize], cap: usize) -> Result<u64> {
    check_cap(m, cap)?;
    if e.len() != m.dims().len() || e.iter().zip(m.dims()).any(|(a, b)| a > b) {
        return Ok(0);
    }
    Ok(count_class(m, &arrows(m), e))
}

fn count_class(m: &Module, arrows: &[Arrow], e: &[usize]) -> u64 {
    let p = m.prime();
    let n = e.len();
    let choices: Vec<Vec<Vec<Vec<u64>>>> = (0..n).map(|v| subspaces(p, m.dims()[v], e[v])).collect();
    let spans: Vec<Vec<Basis>> = choices
        .iter()
        .enumerate()
        .map(|(v, cs)| cs.iter().map(|rows| Basis::span(p, m.dims()[v], rows.iter().cloned())).collect())
        .collect();

    fn go(
        v: usize,
        chosen: &mut Vec<usize>,
        choices: &[Vec<Vec<Vec<u64>>>],
        spans: &[Vec<Basis>],
        arrows: &[Arrow],
        p: u64,
    ) -> u64 {
        if v == choices.len() {
            return 1;
        }
        let mut total = 0;
        for k in 0..choices[v].len() {
            chosen.push(k);
            let closed = arrows.iter().filter(|a| a.s.max(a.t) == v).all(|a| {
                let target = &spans[a.t][chosen[a.t]];
                choices[a.s][chosen[a.s]].iter().all(|u| target.contains(&apply(&a.block, u, p)))
            });
            if closed {
                total += go(v + 1, chosen, choices, spans, arrows, p);
            }
            chosen.pop();
        }
        total
    }
    go(0, &mut Vec::with_capacity(n), &choices, &spans, arrows, p)
}

/// Number of submodules in each class, over all dimension vectors.
/// Classes with no submodules are omitted.
pub fn count_submodules(m: &Module, cap: usize) -> Result<BTreeMap<Vec<usize>, u64>> {
    check_cap(m, cap)?;
    let arrows = arrows(m);
    let classes = dimension_vectors(m.dims());
    let counts: Vec<(Vec<usize>, u64)> = classes
        .into_par_iter()
        .map(|e| {
            let c = count_class(m, &arrows, &e);
            (e, c)
        })
        .collect();
    Ok(counts.into_iter().filter(|(_, c)| *c > 0).collect())
}

/// All `e` with `0 <= e <= d` componentwise, in lexicographic order.
pub fn dimension_vectors(d: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|pre| {
                (0..=di).map(move |x| {
                    let mut v = pre.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// A polynomial in `q` fitted exactly through point counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomial {
    /// Integer coefficients, lowest degree first.
    pub coefficients: Vec<i64>,
    /// The `(q, count)` data it was fitted to.
    pub points: Vec<(u64, u64)>,
}

impl CountingPolynomial {
    pub fn eval(&self, q: i64) -> i64 {
        self.coefficients.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// The Euler characteristic: value at `q = 1`.
    pub fn euler_characteristic(&self) -> i64 {
        self.coefficients.iter().sum()
    }
}

/// Fits a polynomial of degree at most `degree` through `points` and
/// requires the remaining points to lie on it with integer coefficients.
pub fn interpolate(points: &[(u64, u64)], degree: usize) -> Result<CountingPolynomial> {
    if points.len() < degree + 2 {
        return Err(Error::Interpolation(format!(
            "{} points cannot validate a degree {degree} fit",
            points.len()
        )));
    }
    let q = |x: u64| BigRational::from_integer(BigInt::from(x));
    let fit = &points[..=degree];
    // Newton divided differences.
    let xs: Vec<BigRational> = fit.iter().map(|&(x, _)| q(x)).collect();
    let mut coef: Vec<BigRational> = fit.iter().map(|&(_, y)| q(y)).collect();
    for j in 1..coef.len() {
        for i in (j..coef.len()).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Expand to the monomial basis.
    let mut poly = vec![BigRational::zero(); coef.len()];
    for i in (0..coef.len()).rev() {
        // poly = poly * (x - xs[i]) + coef[i]
        let mut next = vec![BigRational::zero(); coef.len()];
        for (k, c) in poly.iter().enumerate() {
            if k + 1 < next.len() {
                next[k + 1] += c;
            }
            next[k] -= c * &xs[i];
        }
        next[0] += &coef[i];
        poly = next;
    }
    let mut coefficients = Vec::with_capacity(poly.len());
    for c in &poly {
        if !c.is_integer() {
            return Err(Error::Interpolation(format!("non-integral coefficient {c}")));
        }
        coefficients.push(
            c.to_integer()
                .to_i64()
                .ok_or_else(|| Error::Interpolation("coefficient out of range".into()))?,
        );
    }
    while coefficients.len() > 1 && coefficients.last() == Some(&0) {
        coefficients.pop();
    }
    let out = CountingPolynomial {
        coefficients,
        points: points.to_vec(),
    };
    for &(x, y) in &points[degree + 1..] {
        let value = out.eval(x as i64);
        if value != y as i64 {
            return Err(Error::Interpolation(format!("residual {} at q = {x}", value - y as i64)));
        }
    }
    Ok(out)
}

/// Upper bound on the degree in `q` of the number of points of `Gr_e(M)`:
/// the dimension of the ambient product of ordinary Grassmannians.
pub fn degree_bound(dims: &[usize], e: &[usize]) -> usize {
    dims.iter().zip(e).map(|(d, k)| k * (d - k)).sum()
}

/// Primes from `given`, extended by the next primes until there are at
/// least `needed`.
pub fn enough_primes(given: &[u64], needed: usize) -> Result<Vec<u64>> {
    let mut out: Vec<u64> = Vec::new();
    for &p in given {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    let mut last = out.iter().copied().max().unwrap_or(1);
    while out.len() < needed {
        last = primes_after(last).next().expect("infinitely many primes");
        out.push(last);
    }
    Ok(out)
}

/// Euler characteristics of all quiver Grassmannians of a module defined
/// over every prime field. `family(q)` must give the same module over `F_q`.
pub fn euler_characteristics<F>(family: F, primes: &[u64], cap: usize) -> Result<BTreeMap<Vec<usize>, CountingPolynomial>>
where
    F: Fn(u64) -> Result<Module> + Sync,
{
    let first = family(primes.first().copied().unwrap_or(2))?;
    check_cap(&first, cap)?;
    let dims = first.dims().to_vec();
    let needed = dimension_vectors(&dims)
        .iter()
        .map(|e| degree_bound(&dims, e) + 2)
        .max()
        .unwrap_or(2);
    let primes = enough_primes(primes, needed)?;
    let counts: Vec<(u64, BTreeMap<Vec<usize>, u64>)> = primes
        .iter()
        .map(|&q| {
            let m = family(q)?;
            if m.dims() != dims.as_slice() {
                return Err(Error::Interpolation(format!("dimension vector changes at q = {q}")));
            }
            Ok((q, count_submodules(&m, cap)?))
        })
        .collect::<Result<_>>()?;
    let classes: BTreeSet<Vec<usize>> = counts.iter().flat_map(|(_, c)| c.keys().cloned()).collect();
    let mut out = BTreeMap::new();
    for e in classes {
        let points: Vec<(u64, u64)> = counts.iter().map(|(q, c)| (*q, c.get(&e).copied().unwrap_or(0))).collect();
        let poly = interpolate(&points, degree_bound(&dims, &e))?;
        out.insert(e, poly);
    }
    Ok(out)
}

/// `χ(Gr_e(M))` for a single class.
pub fn euler_char<F>(family: F, e: &[usize], primes: &[u64], cap: usize) -> Result<CountingPolynomial>
where
    F: Fn(u64) -> Result<Module> + Sync,
{
    let first = family(primes.first().copied().unwrap_or(2))?;
    check_cap(&first, cap)?;
    let dims = first.dims().to_vec();
    let degree = degree_bound(&dims, e);
    let primes = enough_primes(primes, degree + 2)?;
    let points = primes
        .iter()
        .map(|&q| Ok((q, count_submodules_of_class(&family(q)?, e, cap)?)))
        .collect::<Result<Vec<_>>>()?;
    interpolate(&points, degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, semisimple, Quiver, Relation};
    use std::sync::Arc;

    fn gaussian(d: usize, k: usize, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow((d - i) as u32) - 1;
            den *= q.pow((i + 1) as u32) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        for q in [2, 3, 5] {
            for d in 0..4 {
                for k in 0..=d {
                    assert_eq!(subspaces(q, d, k).len() as u64, gaussian(d, k, q), "q={q} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn projective_line() {
        let family = |q: u64| -> Result<Module> {
            let k = Arc::new(semisimple(1, q)?);
            Ok(Module::simple(k.clone(), 0).direct_sum(&Module::simple(k, 0)))
        };
        let poly = euler_char(family, &[1], &DEFAULT_PRIMES, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(poly.coefficients, vec![1, 1]);
        assert_eq!(poly.euler_characteristic(), 2);
        let all = euler_characteristics(family, &DEFAULT_PRIMES, DEFAULT_ENUM_CAP).unwrap();
        let chis: Vec<i64> = all.values().map(CountingPolynomial::euler_characteristic).collect();
        assert_eq!(chis, vec![1, 2, 1]);
    }

    #[test]
    fn uniserial_module_has_chain_of_submodules() {
        let family = |q: u64| -> Result<Module> {
            let quiver = Quiver::new(vec!["1", "2"], vec![("a", "1", "2"), ("b", "2", "1")])?;
            let rels = vec![Relation::monomial(vec!["b", "a"]), Relation::monomial(vec!["a", "b"])];
            Ok(Module::projective(Arc::new(build_algebra(&quiver, &rels, q)?), 0))
        };
        let all = euler_characteristics(family, &DEFAULT_PRIMES, DEFAULT_ENUM_CAP).unwrap();
        let classes: Vec<&Vec<usize>> = all.keys().collect();
        assert_eq!(classes, vec![&vec![0, 0], &vec![0, 1], &vec![1, 1]]);
        assert!(all.values().all(|p| p.coefficients == vec![1]));
    }

    #[test]
    fn interpolation_demands_residual_and_integrality() {
        let pts: Vec<(u64, u64)> = [2u64, 3, 5].iter().map(|&q| (q, q + 1)).collect();
        assert_eq!(interpolate(&pts, 1).unwrap().coefficients, vec![1, 1]);
        assert!(interpolate(&pts[..2], 1).is_err());
        let bad = vec![(2, 3), (3, 4), (5, 7)];
        assert!(matches!(interpolate(&bad, 1), Err(Error::Interpolation(_))));
        let frac = vec![(2, 1), (3, 2), (5, 4)];
        assert!(interpolate(&frac, 1).is_ok());
        let half = vec![(1, 0), (3, 1), (5, 2)];
        assert!(matches!(interpolate(&half, 1), Err(Error::Interpolation(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let k = Arc::new(semisimple(1, 2).unwrap());
        let big = Module::direct_sum_all(k.clone(), vec![Module::simple(k.clone(), 0); 9].iter());
        assert!(matches!(
            count_submodules(&big, DEFAULT_ENUM_CAP),
            Err(Error::EnumerationCap { dim: 9, cap: 8 })
        ));
    }
}
