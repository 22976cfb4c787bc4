//! Implicit Cayley graphs on a subfield: generalized Paley graphs
//! `GP(q, d)` (difference is a nonzero d-th power) and Peisert graphs
//! `P*_q` (difference is `g^j` with `j = 0, 1 mod 4`).
//!
//! Adjacency is index arithmetic on the subfield's discrete logarithm, so
//! no adjacency structure is stored.

use std::io::{self, Write};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem, SubfieldHandle};
use crate::report::{self, VerdictReport};

/// Largest vertex field for which [`srg_params`] counts exhaustively.
pub const SRG_LIMIT: u64 = 1 << 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Paley { order: u64 },
    Peisert,
}

#[derive(Clone, Copy, Debug)]
pub struct CayleyView<'f> {
    field: &'f FieldCtx,
    kind: GraphKind,
    vertices: SubfieldHandle,
}

impl<'f> CayleyView<'f> {
    /// `GP(|vertices|, d)`; requires `|vertices| = 1 mod 2d`.
    pub fn paley(field: &'f FieldCtx, vertices: SubfieldHandle, d: u64) -> Result<Self> {
        let q = vertices.order();
        if d < 2 {
            return Err(Error::InvalidParameter("GP(q, d) needs d >= 2".into()));
        }
        if q % (2 * d) != 1 {
            return Err(Error::InvalidParameter(format!("GP({q}, {d}) needs q = 1 mod {}", 2 * d)));
        }
        Self::checked(field, GraphKind::Paley { order: d }, vertices)
    }

    /// `P*_{|vertices|}`; requires `p = 3 mod 4` and an even degree.
    pub fn peisert(field: &'f FieldCtx, vertices: SubfieldHandle) -> Result<Self> {
        let p = field.characteristic();
        if p % 4 != 3 || vertices.degree() % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "Peisert graph needs p = 3 mod 4 and even degree, got p = {p}, degree {}",
                vertices.degree()
            )));
        }
        Self::checked(field, GraphKind::Peisert, vertices)
    }

    fn checked(field: &'f FieldCtx, kind: GraphKind, vertices: SubfieldHandle) -> Result<Self> {
        let view = CayleyView { field, kind, vertices };
        // S = -S: -1 has index |V^*| / 2 in the vertex field.
        let minus_one = field.neg(field.one());
        if !view.in_connection_set(minus_one) {
            return Err(Error::InvalidParameter("connection set is not closed under negation".into()));
        }
        Ok(view)
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_field(&self) -> SubfieldHandle {
        self.vertices
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertices.order()
    }

    pub fn label(&self) -> String {
        match self.kind {
            GraphKind::Paley { order } => format!("GP({},{order})", self.vertex_count()),
            GraphKind::Peisert => format!("P*({})", self.vertex_count()),
        }
    }

    pub fn is_vertex(&self, x: FieldElem) -> bool {
        self.field.contains(&self.vertices, x)
    }

    /// Membership of a vertex-field element in the connection set `S`.
    pub fn in_connection_set(&self, z: FieldElem) -> bool {
        let Ok(Some(idx)) = self.field.sub_index(&self.vertices, z) else { return false };
        match self.kind {
            GraphKind::Paley { order } => idx % order == 0,
            GraphKind::Peisert => idx % 4 <= 1,
        }
    }

    /// Adjacency without the vertex check.
    #[inline]
    pub fn adj(&self, x: FieldElem, y: FieldElem) -> bool {
        self.in_connection_set(self.field.sub(x, y))
    }

    pub fn adjacent(&self, x: FieldElem, y: FieldElem) -> Result<bool> {
        if !self.is_vertex(x) || !self.is_vertex(y) {
            return Err(Error::NotAVertex);
        }
        Ok(self.adj(x, y))
    }

    /// Vertices in ascending index order, zero first.
    pub fn vertices(&self) -> impl Iterator<Item = FieldElem> + Clone + 'f {
        self.field.elements(&self.vertices)
    }

    /// 1-based position in [`Self::vertices`].
    pub fn vertex_number(&self, x: FieldElem) -> Result<u64> {
        match self.field.sub_index(&self.vertices, x)? {
            None => Ok(1),
            Some(i) => Ok(i + 2),
        }
    }

    /// `{x in base : x ~ u}`, ascending.
    pub fn neighbors_in(&self, u: FieldElem, base: &SubfieldHandle) -> Vec<FieldElem> {
        self.field.elements(base).filter(|&x| x != u && self.adj(u, x)).collect()
    }

    pub fn edge_count(&self) -> u64 {
        let s = (1..self.vertex_count())
            .filter(|&i| self.in_connection_set(self.field.from_sub_index(&self.vertices, i - 1)))
            .count() as u64;
        self.vertex_count() * s / 2
    }

    /// DIMACS `p edge` format, vertices numbered as in [`Self::vertex_number`].
    pub fn write_dimacs<W: Write>(&self, mut w: W) -> io::Result<()> {
        let verts: Vec<FieldElem> = self.vertices().collect();
        writeln!(w, "c {} over a field of order {}", self.label(), self.field.order())?;
        writeln!(w, "p edge {} {}", verts.len(), self.edge_count())?;
        for (i, &x) in verts.iter().enumerate() {
            for (j, &y) in verts.iter().enumerate().skip(i + 1) {
                if self.adj(x, y) {
                    writeln!(w, "e {} {}", i + 1, j + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Compares the subgraph of `GP(q^d, d)` induced on `F_{q^{d'}}` with
/// `GP(q^{d'}, d')` edge by edge, and checks
/// `gcd(d, (q^d - 1)/(q^{d'} - 1)) = d/d'`.
pub fn verify_lemma41(ctx: &FieldCtx, base: SubfieldHandle, d: u64, dprime: u64) -> Result<VerdictReport> {
    let q = base.order();
    if q % 2 == 0 || d < 2 || (q - 1) % d != 0 {
        return Err(Error::InvalidParameter(format!("need q odd with q = 1 mod d, got q = {q}, d = {d}")));
    }
    if dprime < 2 || d % dprime != 0 {
        return Err(Error::InvalidParameter(format!("need d' > 1 dividing d, got d' = {dprime}")));
    }
    let big = ctx.subfield(base.degree() * d as u32)?;
    let small = ctx.subfield(base.degree() * dprime as u32)?;
    let outer = CayleyView::paley(ctx, big, d)?;
    let inner = CayleyView::paley(ctx, small, dprime)?;

    let verts: Vec<FieldElem> = ctx.elements(&small).collect();
    let mut edges = 0u64;
    let mut mismatches = 0u64;
    let mut witness = None;
    for (i, &x) in verts.iter().enumerate() {
        for &y in &verts[i + 1..] {
            let a = outer.adj(x, y);
            let b = inner.adj(x, y);
            edges += a as u64;
            if a != b {
                mismatches += 1;
                witness.get_or_insert((x, y));
            }
        }
    }
    let cof = (big.order() - 1) / (small.order() - 1);
    let mut r = VerdictReport::new("lemma41")
        .with_param("q", q)
        .with_param("d", d)
        .with_param("dprime", dprime);
    r.set_result("pairs", (verts.len() * (verts.len() - 1) / 2) as u64);
    r.set_result("induced_edges", edges);
    r.set_result("expected_edges", inner.edge_count());
    r.set_result("mismatches", mismatches);
    r.set_result("index_gcd", cof.gcd(&d));
    r.require("edges_equal", mismatches == 0 && edges == inner.edge_count());
    r.require("index_identity", cof.gcd(&d) == d / dprime);
    r.witness = witness.map(|(x, y)| serde_json::json!([report::elem(x), report::elem(y)]));
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

/// Measures `(v, k, lambda, mu)` by exhaustive counting over all pairs with
/// bitset rows; `None` if the graph is not strongly regular. Peisert graphs
/// and `GP(q, 2)` are compared with their known parameters.
pub fn srg_params(g: &CayleyView<'_>) -> Result<(Option<SrgParams>, VerdictReport)> {
    let v = g.vertex_count();
    if v > SRG_LIMIT {
        return Err(Error::TooLargeForExhaustive { vertices: v, limit: SRG_LIMIT });
    }
    let verts: Vec<FieldElem> = g.vertices().collect();
    let n = verts.len();
    let words = n.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; n];
    for (i, &x) in verts.iter().enumerate() {
        for (j, &y) in verts.iter().enumerate() {
            if i != j && g.adj(x, y) {
                rows[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    let degree = |i: usize| rows[i].iter().map(|w| w.count_ones() as u64).sum::<u64>();
    let k = degree(0);
    let mut regular = (0..n).all(|i| degree(i) == k);
    let (mut lambda, mut mu) = (None, None);
    'pairs: for i in 0..n {
        for j in i + 1..n {
            let common: u64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| (a & b).count_ones() as u64).sum();
            let slot = if rows[i][j / 64] >> (j % 64) & 1 == 1 { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => {
                    regular = false;
                    break 'pairs;
                }
                _ => {}
            }
        }
    }
    let params = match (regular, lambda, mu) {
        (true, Some(lambda), Some(mu)) => Some(SrgParams { v, k, lambda, mu }),
        _ => None,
    };

    let mut r = VerdictReport::new("srg").with_param("graph", g.label()).with_param("v", v);
    r.require("strongly_regular", params.is_some());
    if let Some(p) = params {
        r.set_result("v", p.v);
        r.set_result("k", p.k);
        r.set_result("lambda", p.lambda);
        r.set_result("mu", p.mu);
    }
    let expected = match g.kind() {
        GraphKind::Peisert | GraphKind::Paley { order: 2 } => {
            Some(SrgParams { v, k: (v - 1) / 2, lambda: (v - 5) / 4, mu: (v - 1) / 4 })
        }
        GraphKind::Paley { .. } => None,
    };
    if let Some(e) = expected {
        r.set_result("expected", vec![e.v, e.k, e.lambda, e.mu]);
        r.require("matches_expected", params == Some(e));
    }
    Ok((params, r))
}

/// Exact Gaussian integers, enough for the order-4 character identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    /// `i^k`.
    pub fn i_pow(k: u64) -> Self {
        [GaussInt::new(1, 0), GaussInt::new(0, 1), GaussInt::new(-1, 0), GaussInt::new(0, -1)][(k % 4) as usize]
    }

    pub fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re + o.re, self.im + o.im)
    }

    pub fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    pub fn conj(self) -> GaussInt {
        GaussInt::new(self.re, -self.im)
    }
}

/// `4 * 1_S(x) = 2 + (1 + i) conj(chi(x)) + (1 - i) chi(x)` for every
/// nonzero vertex `x`, with `chi` of order 4 and `chi(g) = i`.
pub fn verify_peisert_indicator(g: &CayleyView<'_>) -> Result<VerdictReport> {
    if g.kind() != GraphKind::Peisert {
        return Err(Error::InvalidParameter("the order-4 indicator identity is for Peisert graphs".into()));
    }
    let ctx = g.field();
    let sub = g.vertex_field();
    let mut failures = 0u64;
    let mut witness = None;
    for x in g.vertices().skip(1) {
        let idx = ctx.sub_index(&sub, x)?.expect("nonzero");
        let chi = GaussInt::i_pow(idx);
        let rhs = GaussInt::new(2, 0)
            .add(GaussInt::new(1, 1).mul(chi.conj()))
            .add(GaussInt::new(1, -1).mul(chi));
        let lhs = GaussInt::new(if g.in_connection_set(x) { 4 } else { 0 }, 0);
        if lhs != rhs {
            failures += 1;
            witness.get_or_insert(x);
        }
    }
    let mut r = VerdictReport::new("peisert-indicator").with_param("graph", g.label());
    r.set_result("checked", g.vertex_count() - 1);
    r.set_result("failures", failures);
    r.require("identity_holds", failures == 0);
    r.witness = witness.map(report::elem);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gp13_examples() {
        let f = FieldCtx::new(13, 1).unwrap();
        let g = CayleyView::paley(&f, f.whole(), 2).unwrap();
        assert!(g.adjacent(FieldElem::Zero, f.from_int(4)).unwrap());
        assert!(!g.adjacent(f.from_int(3), f.from_int(3)).unwrap());
        assert!(!g.adjacent(f.from_int(3), f.from_int(10)).unwrap());
        assert_eq!(g.edge_count(), 13 * 6 / 2);
        assert!(CayleyView::paley(&f, f.whole(), 4).is_err());
        assert!(CayleyView::paley(&f, f.whole(), 3).is_ok());
    }

    #[test]
    fn not_a_vertex() {
        let f = FieldCtx::new(5, 2).unwrap();
        let g = CayleyView::paley(&f, f.prime_subfield(), 2).unwrap();
        assert_eq!(g.adjacent(f.generator(), f.one()), Err(Error::NotAVertex));
    }

    #[test]
    fn symmetric_and_translation_invariant() {
        let f = FieldCtx::new(7, 2).unwrap();
        let graphs = [
            CayleyView::peisert(&f, f.whole()).unwrap(),
            CayleyView::paley(&f, f.whole(), 2).unwrap(),
            CayleyView::paley(&f, f.whole(), 3).unwrap(),
            CayleyView::paley(&f, f.whole(), 4).unwrap(),
        ];
        let verts: Vec<_> = f.elements(&f.whole()).collect();
        for g in &graphs {
            for &x in &verts {
                for &y in &verts {
                    assert_eq!(g.adj(x, y), g.adj(y, x));
                }
            }
            for &a in verts.iter().step_by(5) {
                for &x in &verts {
                    for &y in verts.iter().step_by(3) {
                        assert_eq!(g.adj(f.add(x, a), f.add(y, a)), g.adj(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn srg_examples() {
        let f49 = FieldCtx::new(7, 2).unwrap();
        let (p, r) = srg_params(&CayleyView::peisert(&f49, f49.whole()).unwrap()).unwrap();
        assert_eq!(p, Some(SrgParams { v: 49, k: 24, lambda: 11, mu: 12 }));
        assert!(!r.is_failure());
        let f25 = FieldCtx::new(5, 2).unwrap();
        let (p, _) = srg_params(&CayleyView::paley(&f25, f25.whole(), 2).unwrap()).unwrap();
        assert_eq!(p, Some(SrgParams { v: 25, k: 12, lambda: 5, mu: 6 }));
        let f9 = FieldCtx::new(3, 2).unwrap();
        let (p, _) = srg_params(&CayleyView::paley(&f9, f9.whole(), 2).unwrap()).unwrap();
        assert_eq!(p, Some(SrgParams { v: 9, k: 4, lambda: 1, mu: 2 }));
    }

    #[test]
    fn lemma41_small() {
        let f = FieldCtx::new(5, 4).unwrap();
        let r = verify_lemma41(&f, f.prime_subfield(), 4, 2).unwrap();
        assert!(!r.is_failure(), "{r:?}");
        assert_eq!(r.result["induced_edges"], serde_json::json!(25 * 12 / 2));
        let r = verify_lemma41(&f, f.prime_subfield(), 4, 4).unwrap();
        assert!(!r.is_failure());
        assert!(verify_lemma41(&f, f.prime_subfield(), 4, 3).is_err());
    }

    #[test]
    fn peisert_indicator_and_neighborhoods() {
        let f = FieldCtx::new(7, 2).unwrap();
        let g = CayleyView::peisert(&f, f.whole()).unwrap();
        assert!(!verify_peisert_indicator(&g).unwrap().is_failure());
        let base = f.prime_subfield();
        for u in f.elements(&f.whole()).filter(|&u| !f.contains(&base, u)) {
            assert_eq!(g.neighbors_in(u, &base).len(), 3);
        }
        let f25 = FieldCtx::new(5, 2).unwrap();
        let g3 = CayleyView::paley(&f25, f25.whole(), 3).unwrap();
        let b5 = f25.prime_subfield();
        for u in f25.elements(&f25.whole()).filter(|&u| !f25.contains(&b5, u)) {
            assert_eq!(g3.neighbors_in(u, &b5).len(), 1);
        }
    }

    #[test]
    fn peisert_statistics_do_not_depend_on_the_primitive_element() {
        // Rebuild S from g' = g^t for every t coprime to q^2 - 1 and compare
        // degree, lambda and mu, all counted from scratch.
        let f = FieldCtx::new(3, 4).unwrap();
        let n = f.unit_order();
        let verts: Vec<_> = f.elements(&f.whole()).collect();
        let count = |t_inv: u64| {
            let in_s = |z: FieldElem| z.index().is_some_and(|k| (k as u64 * t_inv % n) % 4 <= 1);
            let k = verts.iter().filter(|&&y| in_s(f.sub(FieldElem::Zero, y))).count();
            let common = |x: FieldElem| verts.iter().filter(|&&y| in_s(f.sub(FieldElem::Zero, y)) && in_s(f.sub(x, y))).count();
            let lambda = common(verts.iter().copied().find(|&x| x != FieldElem::Zero && in_s(x)).unwrap());
            let mu = common(verts.iter().copied().find(|&x| x != FieldElem::Zero && !in_s(x)).unwrap());
            (k, lambda, mu)
        };
        let reference = count(1);
        assert_eq!(reference, (40, 19, 20));
        for t in (1..n).filter(|t| t.gcd(&n) == 1).take(12) {
            let t_inv = (1..n).find(|s| s * t % n == 1).unwrap();
            assert_eq!(count(t_inv), reference, "t = {t}");
        }
    }

    #[test]
    fn dimacs_export() {
        let f = FieldCtx::new(5, 1).unwrap();
        let g = CayleyView::paley(&f, f.whole(), 2).unwrap();
        let mut out = Vec::new();
        g.write_dimacs(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("p edge 5 5"));
        assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 5);
    }
}
