//! Shared fixtures for the criterion benches in `benches/`.

use paley_core::residues::random_points;
use paley_core::{FieldCtx, FieldElem, SplitMix64, SubfieldHandle};

/// `k` non-conjugate points of `top` over `base`, from a fixed seed.
pub fn fixed_points(ctx: &FieldCtx, top: &SubfieldHandle, base: &SubfieldHandle, k: usize) -> Vec<FieldElem> {
    let mut rng = SplitMix64::new(0x5eed);
    random_points(ctx, top, base, k, &mut rng, |_| true).expect("small k")
}

/// A stream of field elements for arithmetic loops.
pub fn sample_elems(ctx: &FieldCtx, n: usize) -> Vec<FieldElem> {
    let mut rng = SplitMix64::new(7);
    (0..n).map(|_| ctx.decode(rng.below(ctx.order())).expect("in range")).collect()
}
