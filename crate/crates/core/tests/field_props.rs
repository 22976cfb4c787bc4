//! Field arithmetic against a coefficient-level oracle, plus Frobenius,
//! subfield and norm structure checked exhaustively on small fields.

mod common;

use common::{naive_subfield, Naive};
use paley_core::arith::divisors;
use paley_core::{FieldCtx, FieldElem, SplitMix64};
use proptest::prelude::*;

const FIELDS: [(u64, u32); 8] = [(2, 1), (2, 4), (2, 8), (3, 3), (3, 6), (5, 2), (7, 2), (13, 3)];

fn field(i: usize) -> FieldCtx {
    let (p, e) = FIELDS[i % FIELDS.len()];
    FieldCtx::new(p, e).unwrap()
}

fn elem(ctx: &FieldCtx, enc: u64) -> FieldElem {
    ctx.decode(enc % ctx.order()).unwrap()
}

proptest! {
    #[test]
    fn add_and_mul_match_coefficient_arithmetic(i in 0usize..8, a in any::<u64>(), b in any::<u64>()) {
        let ctx = field(i);
        let nv = Naive::of(&ctx);
        let (x, y) = (elem(&ctx, a), elem(&ctx, b));
        let (cx, cy) = (ctx.to_coeffs(x), ctx.to_coeffs(y));
        prop_assert_eq!(ctx.to_coeffs(ctx.add(x, y)), nv.add(&cx, &cy));
        prop_assert_eq!(ctx.to_coeffs(ctx.mul(x, y)), nv.mul(&cx, &cy));
    }

    #[test]
    fn field_axioms(i in 0usize..8, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let ctx = field(i);
        let (x, y, z) = (elem(&ctx, a), elem(&ctx, b), elem(&ctx, c));
        prop_assert_eq!(ctx.add(ctx.add(x, y), z), ctx.add(x, ctx.add(y, z)));
        prop_assert_eq!(ctx.mul(ctx.mul(x, y), z), ctx.mul(x, ctx.mul(y, z)));
        prop_assert_eq!(ctx.add(x, y), ctx.add(y, x));
        prop_assert_eq!(ctx.mul(x, ctx.add(y, z)), ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
        prop_assert_eq!(ctx.add(x, ctx.neg(x)), FieldElem::Zero);
        prop_assert_eq!(ctx.sub(ctx.add(x, y), y), x);
        if !x.is_zero() {
            prop_assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), ctx.one());
        } else {
            prop_assert!(ctx.inv(x).is_err());
        }
    }

    #[test]
    fn pow_matches_square_and_multiply(i in 0usize..8, a in any::<u64>(), e in 0u64..1_000_000) {
        let ctx = field(i);
        let nv = Naive::of(&ctx);
        let x = elem(&ctx, a);
        prop_assert_eq!(ctx.to_coeffs(ctx.pow(x, e)), nv.pow(&ctx.to_coeffs(x), e));
    }

    #[test]
    fn frobenius_is_additive(i in 0usize..8, a in any::<u64>(), b in any::<u64>()) {
        let ctx = field(i);
        let x = elem(&ctx, a);
        let y = elem(&ctx, b);
        for e in divisors(ctx.degree() as u64) {
            let f = |z| ctx.frobenius(z, e as u32).unwrap();
            prop_assert_eq!(f(ctx.add(x, y)), ctx.add(f(x), f(y)));
            prop_assert_eq!(f(ctx.mul(x, y)), ctx.mul(f(x), f(y)));
        }
    }

    #[test]
    fn splitmix_streams_are_reproducible(seed in any::<u64>(), n in 1u64..1000) {
        let mut a = SplitMix64::new(seed);
        let mut b = SplitMix64::new(seed);
        for _ in 0..32 {
            let v = a.below(n);
            prop_assert!(v < n);
            prop_assert_eq!(v, b.below(n));
        }
    }
}

#[test]
fn splitmix_reference_stream() {
    let mut r = SplitMix64::new(1234567);
    let got: Vec<u64> = (0..5).map(|_| r.next_u64()).collect();
    assert_eq!(
        got,
        [6457827717110365317, 3203168211198807973, 9817491932198370423, 4593380528125082431, 16408922859458223821]
    );
}

/// Fields up to 2^16 elements with a non-trivial subfield lattice.
fn small_towers() -> Vec<FieldCtx> {
    [(2, 4), (2, 6), (2, 12), (3, 4), (3, 6), (5, 4), (7, 4), (17, 2), (251, 2)]
        .iter()
        .map(|&(p, e)| FieldCtx::new(p, e).unwrap())
        .collect()
}

#[test]
fn subfield_membership_matches_frobenius_fixed_points() {
    for ctx in small_towers() {
        let nv = Naive::of(&ctx);
        for e in divisors(ctx.degree() as u64) {
            let sub = ctx.subfield(e as u32).unwrap();
            let fixed: Vec<FieldElem> =
                ctx.elements(&ctx.whole()).filter(|&x| ctx.frobenius(x, e as u32).unwrap() == x).collect();
            assert_eq!(fixed.len() as u64, sub.order(), "{} ^ {e}", ctx.characteristic());
            let by_index: Vec<FieldElem> = ctx.elements(&ctx.whole()).filter(|&x| ctx.contains(&sub, x)).collect();
            assert_eq!(fixed, by_index);
            if ctx.order() <= 4096 {
                assert_eq!(naive_subfield(&ctx, &nv, &sub), fixed);
            }
        }
    }
}

#[test]
fn degree_over_divides_relative_degree() {
    for ctx in small_towers() {
        for e in divisors(ctx.degree() as u64) {
            let base = ctx.subfield(e as u32).unwrap();
            let rel = ctx.degree() / e as u32;
            for x in ctx.elements(&ctx.whole()) {
                let deg = ctx.degree_over(x, &base);
                assert_eq!(rel % deg, 0);
                assert_eq!(ctx.galois_conjugates(x, &base).len() as u32, deg);
            }
        }
    }
}

#[test]
fn power_residuosity_descends_through_the_norm() {
    for ctx in small_towers() {
        let whole = ctx.whole();
        for e in divisors(ctx.degree() as u64) {
            let base = ctx.subfield(e as u32).unwrap();
            for d in divisors(base.unit_order()).into_iter().filter(|&d| d >= 2) {
                for x in ctx.elements(&whole) {
                    let up = ctx.dth_power_test(x, d, &whole).unwrap();
                    let n = ctx.norm_to(x, &base, &whole).unwrap();
                    assert!(ctx.contains(&base, n));
                    assert_eq!(up, ctx.dth_power_test(n, d, &base).unwrap(), "p={} E={} e={e} d={d}", ctx.characteristic(), ctx.degree());
                }
            }
        }
    }
}

#[test]
fn character_values_are_multiplicative() {
    use paley_core::{CharSpec, CharValue};
    for ctx in [FieldCtx::new(13, 1).unwrap(), FieldCtx::new(5, 2).unwrap(), FieldCtx::new(2, 6).unwrap()] {
        let sub = ctx.whole();
        for d in divisors(sub.unit_order()).into_iter().filter(|&d| d >= 2) {
            for twist in 0..d {
                let chi = CharSpec::new(d, twist, sub).unwrap();
                for x in ctx.elements(&sub) {
                    for y in ctx.elements(&sub) {
                        let lhs = chi.eval(&ctx, ctx.mul(x, y)).unwrap();
                        let rhs = chi.eval(&ctx, x).unwrap().mul(chi.eval(&ctx, y).unwrap(), d);
                        assert_eq!(lhs, rhs);
                    }
                    assert_eq!(chi.eval(&ctx, x).unwrap() == CharValue::Zero, x.is_zero());
                }
            }
        }
    }
}
