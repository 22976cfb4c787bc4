//! Solution counts of `(x - v_i)^((q^n - 1)/d) = 1` against a brute-force
//! count in coefficient arithmetic, and the structural properties of `M`.

mod common;

use common::{naive_dth_power, Naive};
use paley_core::arith::divisors;
use paley_core::residues::{random_points, SystemInstance};
use paley_core::{FieldCtx, FieldElem, SplitMix64};
use proptest::prelude::*;

/// `(p, e, n)`: base `F_{p^e}`, points in `F_{p^(e n)}`.
const TOWERS: [(u64, u32, u32); 8] = [(3, 1, 2), (5, 1, 2), (7, 1, 2), (2, 2, 2), (3, 1, 3), (13, 1, 1), (3, 2, 2), (2, 1, 6)];

fn brute_count(ctx: &FieldCtx, nv: &Naive, e: u32, n: u32, d: u64, vs: &[FieldElem]) -> u64 {
    let base = ctx.subfield(e).unwrap();
    let top_order = ctx.subfield(e * n).unwrap().order();
    ctx.elements(&base)
        .filter(|&x| vs.iter().all(|&v| naive_dth_power(ctx, nv, ctx.sub(x, v), d, top_order)))
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn count_matches_brute_force_and_charsum(t in 0usize..8, seed in any::<u64>(), k in 1usize..4, dsel in any::<u64>()) {
        let (p, e, n) = TOWERS[t];
        let ctx = FieldCtx::new(p, e * n).unwrap();
        let nv = Naive::of(&ctx);
        let base = ctx.subfield(e).unwrap();
        let top = ctx.whole();
        let ds: Vec<u64> = divisors(top.unit_order()).into_iter().filter(|&d| d >= 2).collect();
        let d = ds[(dsel % ds.len() as u64) as usize];
        let mut rng = SplitMix64::new(seed);
        let k = k.min(base.order() as usize);
        let vs = random_points(&ctx, &top, &base, k, &mut rng, |_| true).unwrap();
        let inst = SystemInstance::new(&ctx, base, n, d, vs.clone()).unwrap();
        let m = inst.count_solutions();
        prop_assert_eq!(m, brute_count(&ctx, &nv, e, n, d, &vs));
        prop_assert_eq!(inst.count_via_charsum(), Some(m));
        prop_assert!(inst.solutions().iter().all(|&x| ctx.contains(&base, x)));
    }

    #[test]
    fn conjugates_collapse_and_constraints_only_shrink(t in 0usize..8, seed in any::<u64>(), k in 1usize..4, dsel in any::<u64>(), shift in 0u32..6) {
        let (p, e, n) = TOWERS[t];
        let ctx = FieldCtx::new(p, e * n).unwrap();
        let base = ctx.subfield(e).unwrap();
        let top = ctx.whole();
        let ds: Vec<u64> = divisors(top.unit_order()).into_iter().filter(|&d| d >= 2).collect();
        let d = ds[(dsel % ds.len() as u64) as usize];
        let mut rng = SplitMix64::new(seed);
        let k = k.min(base.order() as usize);
        let vs = random_points(&ctx, &top, &base, k, &mut rng, |_| true).unwrap();
        let m = SystemInstance::new(&ctx, base, n, d, vs.clone()).unwrap().count_solutions();

        // Any v_i replaced by a Galois conjugate over the base.
        let mut swapped = vs.clone();
        let orbit = ctx.galois_conjugates(vs[0], &base);
        swapped[0] = orbit[shift as usize % orbit.len()];
        prop_assert_eq!(SystemInstance::new(&ctx, base, n, d, swapped).unwrap().count_solutions(), m);

        // Dropping the last constraint never lowers the count.
        let fewer = SystemInstance::new(&ctx, base, n, d, vs[..k - 1].to_vec()).unwrap().count_solutions();
        prop_assert!(fewer >= m);
    }
}

#[test]
fn empty_system_counts_the_whole_base() {
    let ctx = FieldCtx::new(5, 2).unwrap();
    let base = ctx.subfield(1).unwrap();
    let inst = SystemInstance::new(&ctx, base, 2, 3, vec![]).unwrap();
    assert_eq!(inst.count_solutions(), 5);
}

#[test]
fn conjugate_points_are_rejected() {
    let ctx = FieldCtx::new(3, 2).unwrap();
    let base = ctx.subfield(1).unwrap();
    let g = ctx.generator();
    let gq = ctx.frobenius(g, 1).unwrap();
    assert!(SystemInstance::new(&ctx, base, 2, 2, vec![g, gq]).is_err());
}
