//! Prime-field scalars.
//!
//! Matrices store raw residues and carry their modulus; [`Fp`] is the
//! checked scalar used at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest modulus accepted. Products of two residues must fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a user-supplied modulus.
pub fn check_prime(p: u64) -> Result<u64> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::InvalidPrime(p));
    }
    Ok(p)
}

/// Primes in increasing order starting after `after`.
pub fn primes_after(after: u64) -> impl Iterator<Item = u64> {
    (after + 1..).filter(|&n| is_prime(n))
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Symmetric lift of a residue to `(-p/2, p/2]`.
pub fn lift_symmetric(v: u64, p: u64) -> i64 {
    if v > p / 2 {
        v as i64 - p as i64
    } else {
        v as i64
    }
}

/// An element of the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        debug_assert!(is_prime(modulus));
        Fp {
            value: reduce_i64(value, modulus),
            modulus,
        }
    }

    pub(crate) fn from_residue(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Fp { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Fp> {
        (self.value != 0).then(|| Fp::from_residue(inv_mod(self.value, self.modulus), self.modulus))
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Fp::from_residue(add_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Fp::from_residue(sub_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Fp::from_residue(mul_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::from_residue(neg_mod(self.value, self.modulus), self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two_mod_five() {
        let two = Fp::new(2, 5);
        assert_eq!(two.inverse().unwrap().value(), 3);
        assert!(Fp::new(5, 5).inverse().is_none());
    }

    #[test]
    fn negative_reduction() {
        assert_eq!(Fp::new(-1, 101).value(), 100);
        assert_eq!(lift_symmetric(100, 101), -1);
    }

    #[test]
    fn prime_checks() {
        assert!(check_prime(101).is_ok());
        assert!(check_prime(211).is_ok());
        assert!(check_prime(100).is_err());
        assert!(check_prime(1).is_err());
        assert_eq!(primes_after(7).take(3).collect::<Vec<_>>(), vec![11, 13, 17]);
    }
}
