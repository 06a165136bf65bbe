//! Univariate polynomials over `F_p`, just enough to find eigenvalues.
//! Coefficients are stored lowest degree first.

use rand::Rng;

use crate::field::{add_mod, inv_mod, mul_mod, sub_mod};

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn monic(a: Vec<u64>, p: u64) -> Vec<u64> {
    let a = trim(a);
    match a.last() {
        Some(&lead) if lead != 1 => {
            let inv = inv_mod(lead, p);
            a.into_iter().map(|c| mul_mod(c, inv, p)).collect()
        }
        _ => a,
    }
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mul_mod(*r.last().unwrap(), inv, p);
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(c, mi, p), p);
        }
        r = trim(r);
    }
    r
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    rem(&out, m, p)
}

fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_rem(&result, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(a, p)
}

fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut q = vec![0; r.len().saturating_sub(db)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), inv, p);
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(c, bi, p), p);
        }
        r = trim(r);
    }
    q
}

/// Distinct roots in `F_p` of a nonzero polynomial, in increasing order.
pub fn roots<R: Rng + ?Sized>(f: &[u64], p: u64, rng: &mut R) -> Vec<u64> {
    let f = monic(f.to_vec(), p);
    if f.len() <= 1 {
        return Vec::new();
    }
    if p < 64 {
        return (0..p).filter(|&x| eval(&f, x, p) == 0).collect();
    }
    // Product of the distinct linear factors: gcd(f, x^p - x).
    let xp = pow_rem(&[0, 1], p, &f, p);
    let mut xp_minus_x = xp;
    xp_minus_x.resize(xp_minus_x.len().max(2), 0);
    xp_minus_x[1] = sub_mod(xp_minus_x[1], 1, p);
    let g = gcd(&f, &xp_minus_x, p);
    let mut out = Vec::new();
    split_linear(g, p, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear<R: Rng + ?Sized>(g: Vec<u64>, p: u64, rng: &mut R, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(sub_mod(0, mul_mod(g[0], inv_mod(g[1], p), p), p)),
        _ => loop {
            let a = rng.random_range(0..p);
            let mut h = pow_rem(&[a, 1], (p - 1) / 2, &g, p);
            h.resize(h.len().max(1), 0);
            h[0] = sub_mod(h[0], 1, p);
            let d = gcd(&g, &h, p);
            if d.len() > 1 && d.len() < g.len() {
                let other = div_exact(&g, &d, p);
                split_linear(d, p, rng, out);
                split_linear(monic(other, p), p, rng, out);
                return;
            }
        },
    }
}
