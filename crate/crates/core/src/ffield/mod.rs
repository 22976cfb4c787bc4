//! Finite fields in discrete-log representation.
//!
//! A [`FieldCtx`] fixes one ambient field `F_{p^E}` together with a
//! deterministic modulus and primitive element `g`. Nonzero elements are
//! stored as their index `k` (meaning `g^k`), so multiplication, powers,
//! Frobenius, norms, subfield membership and d-th power tests are all
//! modular arithmetic on indices. Addition goes through a Zech table:
//! `zech[k]` is the index of `1 + g^k`.
//!
//! Every subfield `F_{p^e}` (`e | E`) is addressed with a [`SubfieldHandle`];
//! its nonzero elements are exactly the indices divisible by the cofactor
//! `(p^E - 1) / (p^e - 1)`, and `g^cofactor` is its own primitive element.

mod fp_poly;

use std::fmt;

use crate::arith::{self, factorize, is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Default cap on the ambient field size, as a power of two.
pub const DEFAULT_AMBIENT_BITS: u32 = 24;
/// Tables are indexed by `u32`, so no ambient field may exceed 2^32 elements.
pub const MAX_AMBIENT_BITS: u32 = 32;

const ZECH_NONE: u32 = u32::MAX;
const EXHAUSTIVE_CHECK_LIMIT: u64 = 1 << 16;
const SAMPLE_CHECKS: usize = 64;

/// A field element: zero, or `g^k` for an index `k` in `[0, p^E - 2]`.
///
/// The derived ordering puts `Zero` first and then follows the index, which
/// is the "ascending index order" used by every deterministic scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElem {
    Zero,
    Pow(u32),
}

impl FieldElem {
    pub fn is_zero(self) -> bool {
        matches!(self, FieldElem::Zero)
    }

    pub fn index(self) -> Option<u32> {
        match self {
            FieldElem::Zero => None,
            FieldElem::Pow(k) => Some(k),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Zero => write!(f, "0"),
            FieldElem::Pow(k) => write!(f, "g^{k}"),
        }
    }
}

/// The subfield of order `p^degree` inside an ambient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubfieldHandle {
    degree: u32,
    order: u64,
    cofactor: u64,
}

impl SubfieldHandle {
    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `(p^E - 1) / (p^degree - 1)`: ambient indices of nonzero subfield
    /// elements are exactly its multiples.
    pub fn cofactor(&self) -> u64 {
        self.cofactor
    }

    pub fn unit_order(&self) -> u64 {
        self.order - 1
    }

    /// True if `self` is a subfield of `other`.
    pub fn is_subfield_of(&self, other: &SubfieldHandle) -> bool {
        other.degree % self.degree == 0
    }
}

/// An ambient finite field with complete discrete-log tables.
pub struct FieldCtx {
    p: u64,
    degree: u32,
    order: u64,
    unit_order: u64,
    modulus: Vec<u64>,
    generator: Vec<u64>,
    /// `exp[k]` = polynomial encoding of `g^k`.
    exp: Vec<u32>,
    /// `log[enc]` = index of the element with encoding `enc` (`log[0]` unused).
    log: Vec<u32>,
    zech: Vec<u32>,
    unit_factors: Vec<(u64, u32)>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl FieldCtx {
    /// Builds `F_{p^degree}` under the default ambient cap.
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        Self::with_cap(p, degree, DEFAULT_AMBIENT_BITS)
    }

    /// Builds `F_{p^degree}`, rejecting fields with more than `2^cap_bits`
    /// elements.
    pub fn with_cap(p: u64, degree: u32, cap_bits: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let cap_bits = cap_bits.min(MAX_AMBIENT_BITS);
        let too_large = Error::AmbientTooLarge { p, degree, cap_bits };
        let order = arith::checked_pow(p, degree).ok_or_else(|| too_large.clone())?;
        if order > 1u64 << cap_bits {
            return Err(too_large);
        }
        let unit_order = order - 1;
        let len = degree as usize;

        let modulus = (0..order)
            .map(|k| {
                let mut f = fp_poly::decode(k, p, len);
                f.push(1);
                f
            })
            .find(|f| fp_poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let unit_factors = factorize(unit_order);
        let generator = (1..order)
            .map(|k| fp_poly::decode(k, p, len))
            .find(|h| {
                unit_factors.iter().all(|&(l, _)| {
                    fp_poly::pow_mod_poly(h, unit_order / l, &modulus, p) != [1]
                })
            })
            .expect("a primitive element exists");

        let n = unit_order as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = vec![0u64; len];
        cur[0] = 1;
        let mut scratch = vec![0u64; len];
        let mut shifted = vec![0u64; len];
        for (k, slot) in exp.iter_mut().enumerate() {
            let enc = fp_poly::encode(&cur, p) as u32;
            *slot = enc;
            assert_eq!(log[enc as usize], u32::MAX, "generator order is below p^E - 1");
            log[enc as usize] = k as u32;
            mul_by_generator(&mut cur, &generator, &modulus, p, &mut scratch, &mut shifted);
        }
        assert!(cur[0] == 1 && cur[1..].iter().all(|&c| c == 0), "g^(p^E-1) != 1");

        let zech = exp
            .iter()
            .map(|&enc| {
                let sum = plus_one(enc as u64, p);
                if sum == 0 {
                    ZECH_NONE
                } else {
                    log[sum as usize]
                }
            })
            .collect();

        let ctx = FieldCtx {
            p,
            degree,
            order,
            unit_order,
            modulus,
            generator,
            exp,
            log,
            zech,
            unit_factors,
        };
        ctx.check_tables();
        Ok(ctx)
    }

    /// Sampled polynomial cross-check of the log tables, plus an exhaustive
    /// Zech consistency pass for small fields.
    fn check_tables(&self) {
        let n = self.unit_order;
        let mut rng = SplitMix64::new(self.order ^ 0x5eed);
        for _ in 0..SAMPLE_CHECKS {
            let k = rng.below(n);
            let direct = fp_poly::pow_mod_poly(&self.generator, k, &self.modulus, self.p);
            assert_eq!(
                fp_poly::encode(&direct, self.p),
                self.exp[k as usize] as u64,
                "exp table disagrees with polynomial arithmetic at index {k}"
            );
        }
        if self.order <= EXHAUSTIVE_CHECK_LIMIT {
            for k in 0..n as usize {
                let z = self.zech[k];
                let expected = plus_one(self.exp[k] as u64, self.p);
                let got = if z == ZECH_NONE { 0 } else { self.exp[z as usize] as u64 };
                assert_eq!(got, expected, "Zech table entry {k} is wrong");
            }
        }
    }

    /// Exhaustive check of every table entry against direct polynomial
    /// exponentiation. Quadratic-ish in the field size; meant for tests.
    pub fn verify_tables(&self) -> bool {
        (0..self.unit_order).all(|k| {
            let direct = fp_poly::pow_mod_poly(&self.generator, k, &self.modulus, self.p);
            let z = self.zech[k as usize];
            let one_plus =
                fp_poly::encode(&fp_poly::sub(&direct, &[self.p - 1], self.p), self.p);
            fp_poly::encode(&direct, self.p) == self.exp[k as usize] as u64
                && match z {
                    ZECH_NONE => one_plus == 0,
                    z => one_plus == self.exp[z as usize] as u64,
                }
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `p^E - 1`, the order of the multiplicative group.
    pub fn unit_order(&self) -> u64 {
        self.unit_order
    }

    /// Coefficients of the modulus, constant term first (monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Coefficients of the primitive element as a polynomial in `t`.
    pub fn generator_poly(&self) -> &[u64] {
        &self.generator
    }

    /// Prime factorization of `p^E - 1`.
    pub fn unit_factors(&self) -> &[(u64, u32)] {
        &self.unit_factors
    }

    /// Raw Zech table, for reporting and tests.
    pub fn zech_table(&self) -> impl Iterator<Item = Option<u32>> + '_ {
        self.zech.iter().map(|&z| (z != ZECH_NONE).then_some(z))
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::Zero
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::Pow(0)
    }

    pub fn generator(&self) -> FieldElem {
        self.gen_pow(1)
    }

    /// `g^k` for any integer `k`.
    pub fn gen_pow(&self, k: i64) -> FieldElem {
        FieldElem::Pow(k.rem_euclid(self.unit_order as i64) as u32)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, a: i64) -> FieldElem {
        self.decode(a.rem_euclid(self.p as i64) as u64)
            .expect("prime-field encodings are in range")
    }

    /// Element with the given polynomial coefficients (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.degree as usize {
            return Err(Error::InvalidParameter("too many coefficients".into()));
        }
        let reduced: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        self.decode(fp_poly::encode(&reduced, self.p))
    }

    /// Element with polynomial encoding `sum c_i p^i`.
    pub fn decode(&self, enc: u64) -> Result<FieldElem> {
        if enc >= self.order {
            return Err(Error::InvalidParameter(format!("encoding {enc} out of range")));
        }
        Ok(if enc == 0 {
            FieldElem::Zero
        } else {
            FieldElem::Pow(self.log[enc as usize])
        })
    }

    pub fn encode(&self, x: FieldElem) -> u64 {
        match x {
            FieldElem::Zero => 0,
            FieldElem::Pow(k) => self.exp[k as usize] as u64,
        }
    }

    pub fn to_coeffs(&self, x: FieldElem) -> Vec<u64> {
        fp_poly::decode(self.encode(x), self.p, self.degree as usize)
    }

    #[inline]
    fn reduce(&self, k: u64) -> u32 {
        (k % self.unit_order) as u32
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Zero, y) | (y, FieldElem::Zero) => y,
            (FieldElem::Pow(i), FieldElem::Pow(j)) => {
                // g^i + g^j = g^i (1 + g^(j-i))
                let n = self.unit_order as u32;
                let diff = if j >= i { j - i } else { j + n - i };
                match self.zech[diff as usize] {
                    ZECH_NONE => FieldElem::Zero,
                    z => FieldElem::Pow(self.reduce(i as u64 + z as u64)),
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match a {
            FieldElem::Zero => FieldElem::Zero,
            FieldElem::Pow(k) if self.p == 2 => FieldElem::Pow(k),
            FieldElem::Pow(k) => FieldElem::Pow(self.reduce(k as u64 + self.unit_order / 2)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Pow(i), FieldElem::Pow(j)) => FieldElem::Pow(self.reduce(i as u64 + j as u64)),
            _ => FieldElem::Zero,
        }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        match a {
            FieldElem::Zero => Err(Error::DivisionByZero),
            FieldElem::Pow(k) => Ok(FieldElem::Pow(self.reduce(self.unit_order - k as u64))),
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        match a {
            _ if e == 0 => self.one(),
            FieldElem::Zero => FieldElem::Zero,
            FieldElem::Pow(k) => FieldElem::Pow(mul_mod(k as u64, e % self.unit_order, self.unit_order) as u32),
        }
    }

    /// Handle for the subfield of degree `e` over the prime field.
    pub fn subfield(&self, e: u32) -> Result<SubfieldHandle> {
        if e == 0 || self.degree % e != 0 {
            return Err(Error::InvalidSubfieldDegree { sub: e, ambient: self.degree });
        }
        let order = self.p.pow(e);
        Ok(SubfieldHandle { degree: e, order, cofactor: self.unit_order / (order - 1) })
    }

    pub fn prime_subfield(&self) -> SubfieldHandle {
        self.subfield(1).expect("1 divides every degree")
    }

    /// Handle for the ambient field itself.
    pub fn whole(&self) -> SubfieldHandle {
        self.subfield(self.degree).expect("E divides E")
    }

    pub fn contains(&self, sub: &SubfieldHandle, x: FieldElem) -> bool {
        match x {
            FieldElem::Zero => true,
            FieldElem::Pow(k) => k as u64 % sub.cofactor == 0,
        }
    }

    /// Discrete log of `x` relative to the subfield's own primitive element
    /// `g^cofactor`; `None` for zero.
    pub fn sub_index(&self, sub: &SubfieldHandle, x: FieldElem) -> Result<Option<u64>> {
        match x {
            FieldElem::Zero => Ok(None),
            FieldElem::Pow(k) if k as u64 % sub.cofactor == 0 => Ok(Some(k as u64 / sub.cofactor)),
            FieldElem::Pow(_) => Err(Error::NotInSubfield { order: sub.order }),
        }
    }

    /// The element with subfield index `i` (i.e. `(g^cofactor)^i`).
    pub fn from_sub_index(&self, sub: &SubfieldHandle, i: u64) -> FieldElem {
        FieldElem::Pow(mul_mod(i % sub.unit_order(), sub.cofactor, self.unit_order) as u32)
    }

    /// Elements of a subfield in ascending index order, zero first.
    pub fn elements(&self, sub: &SubfieldHandle) -> impl Iterator<Item = FieldElem> + Clone {
        let c = sub.cofactor;
        std::iter::once(FieldElem::Zero)
            .chain((0..sub.unit_order()).map(move |i| FieldElem::Pow((i * c) as u32)))
    }

    /// `x^(p^e)`, the `e`-th power of the absolute Frobenius.
    pub fn frobenius(&self, x: FieldElem, e: u32) -> Result<FieldElem> {
        if e == 0 || self.degree % e != 0 {
            return Err(Error::InvalidSubfieldDegree { sub: e, ambient: self.degree });
        }
        Ok(self.frob_unchecked(x, e))
    }

    #[inline]
    fn frob_unchecked(&self, x: FieldElem, e: u32) -> FieldElem {
        match x {
            FieldElem::Zero => FieldElem::Zero,
            FieldElem::Pow(k) => {
                let q = pow_mod(self.p, e as u64, self.unit_order);
                FieldElem::Pow(mul_mod(k as u64, q, self.unit_order) as u32)
            }
        }
    }

    /// Norm from the subfield `top` down to `sub`: `x^((|top|-1)/(|sub|-1))`.
    pub fn norm_to(&self, x: FieldElem, sub: &SubfieldHandle, top: &SubfieldHandle) -> Result<FieldElem> {
        if !sub.is_subfield_of(top) {
            return Err(Error::InvalidSubfieldDegree { sub: sub.degree, ambient: top.degree });
        }
        if !self.contains(top, x) {
            return Err(Error::NotInSubfield { order: top.order });
        }
        Ok(self.pow(x, (top.order - 1) / (sub.order - 1)))
    }

    /// Size of the Frobenius orbit of `x` over `base`: the degree of its
    /// minimal polynomial over that subfield.
    pub fn degree_over(&self, x: FieldElem, base: &SubfieldHandle) -> u32 {
        let FieldElem::Pow(k) = x else { return 1 };
        let q = base.order % self.unit_order;
        let k = k as u64;
        let mut cur = mul_mod(k, q, self.unit_order);
        let mut deg = 1;
        while cur != k {
            cur = mul_mod(cur, q, self.unit_order);
            deg += 1;
        }
        deg
    }

    /// The Frobenius orbit `{x, x^q, x^(q^2), ...}` over `base`, in orbit order.
    pub fn galois_conjugates(&self, x: FieldElem, base: &SubfieldHandle) -> Vec<FieldElem> {
        let mut orbit = vec![x];
        let mut cur = self.frob_unchecked(x, base.degree);
        while cur != x {
            orbit.push(cur);
            cur = self.frob_unchecked(cur, base.degree);
        }
        orbit
    }

    /// Smallest `j >= 0` with `y = x^(q^j)`, or `None` if not conjugate.
    pub fn conjugate_exponent(&self, x: FieldElem, y: FieldElem, base: &SubfieldHandle) -> Option<u32> {
        self.galois_conjugates(x, base)
            .iter()
            .position(|&c| c == y)
            .map(|j| j as u32)
    }

    pub fn are_conjugate(&self, x: FieldElem, y: FieldElem, base: &SubfieldHandle) -> bool {
        self.conjugate_exponent(x, y, base).is_some()
    }

    /// True iff `x` is a nonzero `d`-th power in the subfield `sub`.
    pub fn dth_power_test(&self, x: FieldElem, d: u64, sub: &SubfieldHandle) -> Result<bool> {
        if d == 0 || sub.unit_order() % d != 0 {
            return Err(Error::OrderMismatch { d, group: sub.unit_order() });
        }
        Ok(match self.sub_index(sub, x)? {
            None => false,
            Some(i) => i % d == 0,
        })
    }
}

fn plus_one(enc: u64, p: u64) -> u64 {
    let c0 = enc % p;
    enc - c0 + (c0 + 1) % p
}

/// `cur <- cur * gen mod modulus`, allocation-free; `gen` is typically of
/// tiny degree so this costs `O(E * deg gen)`.
fn mul_by_generator(
    cur: &mut [u64],
    gen: &[u64],
    modulus: &[u64],
    p: u64,
    acc: &mut [u64],
    shifted: &mut [u64],
) {
    let len = cur.len();
    acc.iter_mut().for_each(|c| *c = 0);
    shifted.copy_from_slice(cur);
    let top = fp_poly::degree(gen).unwrap_or(0);
    for (i, &gi) in gen.iter().enumerate().take(top + 1) {
        if gi != 0 {
            for (a, &s) in acc.iter_mut().zip(shifted.iter()) {
                *a = (*a + mul_mod(gi, s, p)) % p;
            }
        }
        if i < top {
            // shifted <- shifted * t mod modulus (modulus is monic of degree len)
            let carry = shifted[len - 1];
            for j in (1..len).rev() {
                shifted[j] = shifted[j - 1];
            }
            shifted[0] = 0;
            if carry != 0 {
                for j in 0..len {
                    shifted[j] = (shifted[j] + p - mul_mod(carry, modulus[j], p)) % p;
                }
            }
        }
    }
    cur.copy_from_slice(acc);
}
