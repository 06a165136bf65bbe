//! Integer Laurent polynomials in `x1..xn`, the value ring of every character.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A Laurent polynomial with integer coefficients in canonical form: no zero
/// coefficients are stored and exponent vectors are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(exponents: Vec<i64>, coeff: i64) -> Self {
        let mut p = LaurentPoly::zero(exponents.len());
        if coeff != 0 {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// The variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        LaurentPoly::monomial(e, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &i64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[i64]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    fn add_term(&mut self, exponents: Vec<i64>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &LaurentPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_nvars(other)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Sets every variable listed in `to_one` (zero-based) to 1; the result
    /// lives in the remaining variables, in their original order.
    pub fn specialize(&self, to_one: &[usize]) -> LaurentPoly {
        let keep: Vec<usize> = (0..self.nvars).filter(|i| !to_one.contains(i)).collect();
        let mut out = LaurentPoly::zero(keep.len());
        for (e, &c) in &self.terms {
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c);
        }
        out
    }

    /// Keeps `x1..x_r` and sets the rest to 1.
    pub fn specialize_tail(&self, r: usize) -> LaurentPoly {
        let tail: Vec<usize> = (r..self.nvars).collect();
        self.specialize(&tail)
    }

    /// Value at `x_i = 1` for all `i`.
    pub fn value_at_ones(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (k, c < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            let mag = c.unsigned_abs();
            match (factors.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{}", factors.join("*"))?,
                (false, _) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

/// Parses the canonical textual form, e.g. `x1^-1*x2 + 2*x3 - 1`. The number
/// of variables must be supplied because it cannot be recovered from text.
pub fn parse_laurent(nvars: usize, text: &str) -> Result<LaurentPoly> {
    let bad = |why: &str| Error::Fixture(format!("cannot parse Laurent polynomial {text:?}: {why}"));
    let mut out = LaurentPoly::zero(nvars);
    let s = text.trim();
    if s == "0" {
        return Ok(out);
    }
    let mut pieces: Vec<(i64, String)> = Vec::new();
    let mut sign = 1;
    let mut cur = String::new();
    let mut prev_caret = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' if !prev_caret && !cur.trim().is_empty() => {
                pieces.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            }
            '-' if !prev_caret => sign = -sign,
            '+' if !prev_caret => {}
            _ => cur.push(ch),
        }
        if !ch.is_whitespace() {
            prev_caret = ch == '^';
        }
    }
    pieces.push((sign, cur));
    for (sign, body) in pieces {
        let body = body.trim();
        if body.is_empty() {
            return Err(bad("empty term"));
        }
        let mut coeff = sign;
        let mut exps = vec![0i64; nvars];
        for factor in body.split('*').map(str::trim) {
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad("exponent"))?),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| bad("variable index"))?;
                if idx == 0 || idx > nvars {
                    return Err(bad("variable out of range"));
                }
                exps[idx - 1] += exp;
            } else {
                coeff *= factor.parse::<i64>().map_err(|_| bad("coefficient"))?;
            }
        }
        out.add_term(exps, coeff);
    }
    Ok(out)
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses with as many variables as the largest index mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let nvars = s
            .split(|c: char| !c.is_ascii_alphanumeric())
            .filter_map(|tok| tok.strip_prefix('x'))
            .filter_map(|i| i.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        parse_laurent(nvars, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(n: usize, s: &str) -> LaurentPoly {
        parse_laurent(n, s).unwrap()
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let x1 = LaurentPoly::var(1, 0);
        let x1inv = LaurentPoly::monomial(vec![-1], 1);
        assert_eq!(x1.mul(&x1inv).unwrap(), LaurentPoly::one(1));
    }

    #[test]
    fn unit_is_neutral() {
        let a = lp(2, "x1 + x2");
        assert_eq!(a.mul(&LaurentPoly::one(2)).unwrap(), a);
    }

    #[test]
    fn exchange_relation_product() {
        let a = lp(3, "x1^-1*x2 + x1^-1*x3");
        let x1 = LaurentPoly::var(3, 0);
        assert_eq!(a.mul(&x1).unwrap(), lp(3, "x2 + x3"));
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(lp(3, "x1*x3^-1").specialize(&[2]), lp(2, "x1"));
        let a = lp(3, "x1^-1*x2 + x1^-1*x3");
        assert_eq!(a.specialize(&[1, 2]), lp(1, "2*x1^-1"));
        assert_eq!(LaurentPoly::one(3).specialize(&[0, 2]), LaurentPoly::one(1));
    }

    #[test]
    fn canonical_text() {
        let a = lp(3, "x1^-1*x3 + x1^-1*x2");
        assert_eq!(a.to_string(), "x1^-1*x2 + x1^-1*x3");
        assert_eq!(lp(1, "2*x1^-1").to_string(), "2*x1^-1");
        assert_eq!(lp(2, "x1 - x2").to_string(), "x1 - x2");
        assert_eq!(lp(2, "-3").to_string(), "-3");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn cancellation_restores_canonical_form() {
        let a = lp(2, "x1 + x2");
        let b = lp(2, "x2");
        assert_eq!(a.sub(&b).unwrap(), lp(2, "x1"));
        assert_eq!(a.sub(&a).unwrap().terms().count(), 0);
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        assert!(LaurentPoly::one(2).mul(&LaurentPoly::one(3)).is_err());
    }
}
