//! Dense polynomials over a prime field F_p, used while constructing a
//! field: choosing the modulus, finding the primitive element, and
//! cross-checking the log tables. Coefficients are stored low degree first.

use crate::arith::mul_mod;

pub(crate) type FpPoly = Vec<u64>;

pub(crate) fn trim(f: &mut FpPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub(crate) fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Integer encoding `sum c_i p^i`; the ordering this induces is the
/// lexicographic order used for every deterministic choice.
pub(crate) fn encode(f: &[u64], p: u64) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

pub(crate) fn decode(mut enc: u64, p: u64, len: usize) -> FpPoly {
    let mut f = vec![0u64; len];
    for c in f.iter_mut() {
        *c = enc % p;
        enc /= p;
    }
    debug_assert_eq!(enc, 0);
    f
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m` (not necessarily monic).
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> FpPoly {
    let dm = degree(m).expect("reduction modulo zero polynomial");
    let lead_inv = inv_mod_p(m[dm], p);
    let mut r: FpPoly = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = mul_mod(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - mul_mod(factor, c, p)) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> FpPoly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_mod_poly(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_poly(&acc, &b, m, p);
        }
        b = mul_mod_poly(&b, &b, m, p);
        exp >>= 1;
    }
    rem(&acc, m, p)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test for a monic `f` of degree >= 1.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = degree(f).expect("zero polynomial");
    if n == 0 {
        return false;
    }
    let x: FpPoly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 0..n / 2 {
        h = pow_mod_poly(&h, p, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g).unwrap_or(0) > 0 {
            return false;
        }
    }
    true
}
