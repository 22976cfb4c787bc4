//! Schoolbook arithmetic in `F_p[t]/(m(t))` on coefficient vectors, used as
//! an oracle that shares nothing with the log/Zech tables.

#![allow(dead_code)]

use paley_core::{FieldCtx, FieldElem, SubfieldHandle};

pub struct Naive {
    pub p: u64,
    /// Monic modulus, constant term first, length `degree + 1`.
    pub modulus: Vec<u64>,
}

impl Naive {
    pub fn of(ctx: &FieldCtx) -> Self {
        Naive { p: ctx.characteristic(), modulus: ctx.modulus().to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.degree();
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce from the top using t^n = -(m_0 + ... + m_{n-1} t^{n-1}).
        for top in (n..2 * n).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for k in 0..n {
                let sub = c * self.modulus[k] % self.p;
                prod[top - n + k] = (prod[top - n + k] + self.p - sub) % self.p;
            }
        }
        prod.truncate(n);
        prod
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = 1;
        v
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

/// `z` is a nonzero `d`-th power in the subfield of order `order`, decided by
/// `z^((order - 1)/d) = 1` in coefficient arithmetic.
pub fn naive_dth_power(ctx: &FieldCtx, nv: &Naive, z: FieldElem, d: u64, order: u64) -> bool {
    let c = ctx.to_coeffs(z);
    !Naive::is_zero(&c) && nv.pow(&c, (order - 1) / d) == nv.one()
}

/// Elements of `sub` found by scanning the whole field for fixed points of
/// `x -> x^|sub|`, computed in coefficient arithmetic.
pub fn naive_subfield(ctx: &FieldCtx, nv: &Naive, sub: &SubfieldHandle) -> Vec<FieldElem> {
    ctx.elements(&ctx.whole())
        .filter(|&x| {
            let c = ctx.to_coeffs(x);
            nv.pow(&c, sub.order()) == c
        })
        .collect()
}
