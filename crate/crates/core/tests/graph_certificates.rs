//! Cayley-graph structure and clique certificates, re-checked with a naive
//! adjacency that evaluates `(x - y)^((Q - 1)/d)` in coefficient arithmetic.

mod common;

use common::{naive_dth_power, Naive};
use paley_core::cliques::{self, certify, coset_representatives, extend_to_maximal};
use paley_core::{CayleyView, FieldCtx, FieldElem, GraphKind, SplitMix64};
use proptest::prelude::*;

/// `(p, e, d)` for `GP(p^e, d)`; `d = 0` marks the Peisert graph.
const GRAPHS: [(u64, u32, u64); 8] = [(13, 1, 2), (13, 1, 3), (5, 2, 2), (5, 2, 3), (3, 4, 4), (7, 2, 0), (3, 2, 0), (3, 4, 5)];

fn naive_adj(ctx: &FieldCtx, nv: &Naive, g: &CayleyView<'_>, x: FieldElem, y: FieldElem) -> bool {
    let order = g.vertex_count();
    let z = ctx.sub(x, y);
    match g.kind() {
        GraphKind::Paley { order: d } => naive_dth_power(ctx, nv, z, d, order),
        GraphKind::Peisert => {
            // z = gamma^k with k = 0 or 1 mod 4, gamma the vertex field's generator.
            let gamma = ctx.from_sub_index(&g.vertex_field(), 1);
            let c = ctx.to_coeffs(z);
            if Naive::is_zero(&c) {
                return false;
            }
            let quarter = (order - 1) / 4;
            let r = nv.pow(&c, quarter);
            r == nv.one() || r == nv.pow(&ctx.to_coeffs(gamma), quarter)
        }
    }
}

fn build(ctx: &FieldCtx, d: u64) -> CayleyView<'_> {
    if d == 0 {
        CayleyView::peisert(ctx, ctx.whole()).unwrap()
    } else {
        CayleyView::paley(ctx, ctx.whole(), d).unwrap()
    }
}

/// Independent clique and maximality check from the member list alone.
fn naive_flags(ctx: &FieldCtx, nv: &Naive, g: &CayleyView<'_>, members: &[FieldElem]) -> (bool, bool) {
    let clique = members.iter().all(|&x| members.iter().all(|&y| x == y || naive_adj(ctx, nv, g, x, y)));
    let extendable = ctx
        .elements(&ctx.whole())
        .any(|v| !members.contains(&v) && members.iter().all(|&m| naive_adj(ctx, nv, g, v, m)));
    (clique, clique && !extendable)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn certificates_survive_a_naive_recheck(t in 0usize..8, seed in any::<u64>(), size in 1usize..6, grow in any::<bool>()) {
        let (p, e, d) = GRAPHS[t];
        let ctx = FieldCtx::new(p, e).unwrap();
        let nv = Naive::of(&ctx);
        let g = build(&ctx, d);
        let mut rng = SplitMix64::new(seed);
        let mut members: Vec<FieldElem> =
            (0..size).map(|_| ctx.decode(rng.below(ctx.order())).unwrap()).collect();
        members.sort_unstable();
        members.dedup();
        if grow {
            // Start from a single vertex so the greedy pass yields a clique.
            members.truncate(1);
            extend_to_maximal(&g, &mut members);
        }
        let cert = certify(&g, &members).unwrap();
        let (clique, maximal) = naive_flags(&ctx, &nv, &g, &cert.members);
        prop_assert_eq!(cert.is_clique, clique);
        prop_assert_eq!(cert.is_maximal, maximal);
        prop_assert_eq!(cliques::is_clique(&g, &members), clique);
        if grow {
            prop_assert!(cert.is_maximal);
        }
        if let Some((x, y)) = cert.non_edge {
            prop_assert!(!naive_adj(&ctx, &nv, &g, x, y));
        }
        if let Some(v) = cert.extension {
            prop_assert!(!cert.members.contains(&v));
            prop_assert!(cert.members.iter().all(|&m| naive_adj(&ctx, &nv, &g, v, m)));
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_translation_invariant(t in 0usize..8, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (p, e, d) = GRAPHS[t];
        let ctx = FieldCtx::new(p, e).unwrap();
        let nv = Naive::of(&ctx);
        let g = build(&ctx, d);
        let pick = |r: u64| ctx.decode(r % ctx.order()).unwrap();
        let (x, y, s) = (pick(a), pick(b), pick(c));
        prop_assert_eq!(g.adj(x, y), g.adj(y, x));
        prop_assert_eq!(g.adj(ctx.add(x, s), ctx.add(y, s)), g.adj(x, y));
        prop_assert_eq!(g.adj(x, y), x != y && naive_adj(&ctx, &nv, &g, x, y));
    }
}

#[test]
fn small_graphs_are_undirected_and_translation_invariant_exhaustively() {
    for (p, e, d) in [(13, 1, 2), (5, 2, 3), (3, 2, 0), (7, 2, 0)] {
        let ctx = FieldCtx::new(p, e).unwrap();
        let g = build(&ctx, d);
        let vs: Vec<FieldElem> = g.vertices().collect();
        for &x in &vs {
            for &y in &vs {
                assert_eq!(g.adj(x, y), g.adj(y, x));
                for &s in &vs {
                    assert_eq!(g.adj(ctx.add(x, s), ctx.add(y, s)), g.adj(x, y));
                }
            }
        }
    }
}

/// `GP(q^2, d)` with `d | q + 1`: the base field is a clique and
/// `N(u) = N(u^q)` for every `u` outside it.
#[test]
fn base_field_cliques_and_conjugate_neighbourhoods() {
    for (p, e, d) in [(5, 1, 3), (7, 1, 4), (11, 1, 3), (11, 1, 4), (11, 1, 6), (3, 2, 5), (13, 1, 7)] {
        let ctx = FieldCtx::new(p, 2 * e).unwrap();
        let base = ctx.subfield(e).unwrap();
        let g = CayleyView::paley(&ctx, ctx.whole(), d).unwrap();
        let fq: Vec<FieldElem> = ctx.elements(&base).collect();
        assert!(certify(&g, &fq).unwrap().is_clique, "GP({}, {d})", ctx.order());
        for u in ctx.elements(&ctx.whole()).filter(|&u| !ctx.contains(&base, u)) {
            let uq = ctx.frobenius(u, e).unwrap();
            assert_eq!(g.neighbors_in(u, &base), g.neighbors_in(uq, &base));
        }
    }
}

#[test]
fn constructed_cliques_recheck_naively() {
    for (p, d) in [(11u64, 4u64), (5, 3), (17, 3), (11, 3)] {
        let ctx = FieldCtx::new(p, 2).unwrap();
        let nv = Naive::of(&ctx);
        let base = ctx.subfield(1).unwrap();
        let g = CayleyView::paley(&ctx, ctx.whole(), d).unwrap();
        for u in coset_representatives(&ctx, &base, &ctx.whole(), usize::MAX) {
            let (cert, _) = cliques::fq_alpha_paley(&ctx, base, d, u).unwrap();
            assert_eq!(naive_flags(&ctx, &nv, &g, &cert.members), (cert.is_clique, cert.is_maximal));
        }
    }
    for p in [7u64, 11, 19] {
        let ctx = FieldCtx::new(p, 2).unwrap();
        let nv = Naive::of(&ctx);
        let base = ctx.subfield(1).unwrap();
        let g = CayleyView::peisert(&ctx, ctx.whole()).unwrap();
        for u in coset_representatives(&ctx, &base, &ctx.whole(), usize::MAX) {
            let (cert, r) = cliques::fq_alpha_peisert(&ctx, base, u).unwrap();
            assert!(!r.is_failure());
            assert_eq!(naive_flags(&ctx, &nv, &g, &cert.members), (true, true));
        }
    }
}
