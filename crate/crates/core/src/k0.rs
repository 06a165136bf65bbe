//! Integer classes in split and ordinary Grothendieck groups.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

/// Which basis a [`K0Vector`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum K0Basis {
    /// `[T1], ..., [Tn]` in the split Grothendieck group of `add T`.
    SummandsOfT,
    /// Simple classes of `mod C`.
    SimplesOfC,
    /// Simple classes of `mod B`.
    SimplesOfB,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct K0Vector {
    basis: K0Basis,
    coords: Vec<i64>,
}

impl K0Vector {
    pub fn new(basis: K0Basis, coords: Vec<i64>) -> Self {
        K0Vector { basis, coords }
    }

    pub fn zero(basis: K0Basis, len: usize) -> Self {
        K0Vector::new(basis, vec![0; len])
    }

    pub fn unit(basis: K0Basis, len: usize, i: usize) -> Self {
        let mut v = K0Vector::zero(basis, len);
        v.coords[i] = 1;
        v
    }

    pub fn basis(&self) -> K0Basis {
        self.basis
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> K0Vector {
        K0Vector::new(self.basis, self.coords.iter().map(|c| c * k).collect())
    }

    /// First `r` coordinates, same basis tag.
    pub fn truncated(&self, r: usize) -> K0Vector {
        K0Vector::new(self.basis, self.coords[..r].to_vec())
    }

    fn symbol(&self) -> &'static str {
        match self.basis {
            K0Basis::SummandsOfT => "T",
            K0Basis::SimplesOfC => "S'",
            K0Basis::SimplesOfB => "S",
        }
    }
}

fn combine(a: &K0Vector, b: &K0Vector, f: impl Fn(i64, i64) -> i64) -> K0Vector {
    assert_eq!(a.basis, b.basis, "K0 basis mismatch");
    assert_eq!(a.len(), b.len(), "K0 length mismatch");
    K0Vector::new(
        a.basis,
        a.coords.iter().zip(&b.coords).map(|(&x, &y)| f(x, y)).collect(),
    )
}

impl Add for &K0Vector {
    type Output = K0Vector;
    fn add(self, rhs: &K0Vector) -> K0Vector {
        combine(self, rhs, |x, y| x + y)
    }
}

impl Sub for &K0Vector {
    type Output = K0Vector;
    fn sub(self, rhs: &K0Vector) -> K0Vector {
        combine(self, rhs, |x, y| x - y)
    }
}

impl Add for K0Vector {
    type Output = K0Vector;
    fn add(self, rhs: K0Vector) -> K0Vector {
        &self + &rhs
    }
}

impl Sub for K0Vector {
    type Output = K0Vector;
    fn sub(self, rhs: K0Vector) -> K0Vector {
        &self - &rhs
    }
}

impl Neg for K0Vector {
    type Output = K0Vector;
    fn neg(self) -> K0Vector {
        self.scaled(-1)
    }
}

/// `a1*[T1] + ... + an*[Tn]` with zero terms omitted and unit coefficients
/// written bare, e.g. `[T3] - [T1]`.
impl fmt::Display for K0Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.symbol();
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, false) => {}
                (true, true) => write!(f, "-")?,
                (false, false) => write!(f, " + ")?,
                (false, true) => write!(f, " - ")?,
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "[{sym}{}]", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for K0Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.basis, self.coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_omits_zero_terms() {
        let v = K0Vector::new(K0Basis::SummandsOfT, vec![-1, 0, 1]);
        assert_eq!(v.to_string(), "-[T1] + [T3]");
        let w = K0Vector::new(K0Basis::SummandsOfT, vec![0, -1, 2]);
        assert_eq!(w.to_string(), "-[T2] + 2*[T3]");
        assert_eq!(K0Vector::zero(K0Basis::SimplesOfC, 2).to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let a = K0Vector::new(K0Basis::SummandsOfT, vec![1, 2]);
        let b = K0Vector::new(K0Basis::SummandsOfT, vec![3, -1]);
        assert_eq!((&a + &b).coords(), &[4, 1]);
        assert_eq!((&a - &b).coords(), &[-2, 3]);
    }
}
