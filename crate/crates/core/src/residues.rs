//! Counting base-field solutions of `(x - v_i)^((q^n - 1)/d) = 1`.
//!
//! `M` is computed twice: by a direct scan using the d-th power test, and
//! by the character-sum expansion
//! `M = sum_x prod_i (1/d) sum_j chi^j(x - v_i)` evaluated exactly in
//! `Z[zeta_d]`. The verifiers compare `M` against the main terms and error
//! bounds of the three counting results and require both routes to agree.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;

use crate::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem, SubfieldHandle};
use crate::report::{self, BoundCheck, Verdict, VerdictReport};
use crate::rng::SplitMix64;

/// A system `(x - v_i)^((q^n - 1)/d) = 1`, `x` ranging over the base `F_q`.
#[derive(Clone, Debug)]
pub struct SystemInstance<'f> {
    field: &'f FieldCtx,
    base: SubfieldHandle,
    ext: u32,
    top: SubfieldHandle,
    order: u64,
    points: Vec<FieldElem>,
    degrees: Vec<u32>,
}

impl<'f> SystemInstance<'f> {
    /// Validates `d >= 2`, `d | q^n - 1`, membership of every `v_i` in
    /// `F_{q^n}`, and pairwise non-conjugacy over `F_q`.
    pub fn new(
        field: &'f FieldCtx,
        base: SubfieldHandle,
        ext: u32,
        order: u64,
        points: Vec<FieldElem>,
    ) -> Result<Self> {
        if ext == 0 {
            return Err(Error::InvalidParameter("extension ratio n must be >= 1".into()));
        }
        if order < 2 {
            return Err(Error::InvalidParameter("power order d must be >= 2".into()));
        }
        let top = field.subfield(base.degree() * ext)?;
        if top.unit_order() % order != 0 {
            return Err(Error::OrderMismatch { d: order, group: top.unit_order() });
        }
        if points.iter().any(|&v| !field.contains(&top, v)) {
            return Err(Error::NotInSubfield { order: top.order() });
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if field.are_conjugate(points[i], points[j], &base) {
                    return Err(Error::ConjugatePair(i, j));
                }
            }
        }
        let degrees = points.iter().map(|&v| field.degree_over(v, &base)).collect();
        Ok(SystemInstance { field, base, ext, top, order, points, degrees })
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn q(&self) -> u64 {
        self.base.order()
    }

    pub fn n(&self) -> u32 {
        self.ext
    }

    pub fn d(&self) -> u64 {
        self.order
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[FieldElem] {
        &self.points
    }

    /// `d_i`: degree of `v_i` over the base field.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn base(&self) -> SubfieldHandle {
        self.base
    }

    pub fn top(&self) -> SubfieldHandle {
        self.top
    }

    fn is_solution(&self, x: FieldElem) -> bool {
        self.points.iter().all(|&v| {
            self.field
                .dth_power_test(self.field.sub(x, v), self.order, &self.top)
                .expect("validated at construction")
        })
    }

    /// The solutions in ascending index order.
    pub fn solutions(&self) -> Vec<FieldElem> {
        self.field.elements(&self.base).filter(|&x| self.is_solution(x)).collect()
    }

    /// Exact `M` by exhaustive scan of the base field.
    pub fn count_solutions(&self) -> u64 {
        self.field.elements(&self.base).filter(|&x| self.is_solution(x)).count() as u64
    }

    /// The exact sum `sum_x prod_i sum_j chi^j(x - v_i)` in `Z[zeta_d]`,
    /// with `chi` of order `d` on `F_{q^n}`. It equals `d^k * M`.
    ///
    /// Each factor `sum_j chi^j(y)` is the kernel
    /// [`CycloSum::orthogonality_kernel`], which depends on `chi(y)` only
    /// through `gcd(log y, d)`; points `x` with the same multiset of gcds
    /// produce the same product, so the product is formed once per class.
    pub fn charsum_total(&self) -> CycloSum {
        let d = self.order;
        let mut classes: BTreeMap<Vec<u64>, i64> = BTreeMap::new();
        'points: for x in self.field.elements(&self.base) {
            let mut key = Vec::with_capacity(self.points.len());
            for &v in &self.points {
                match self.field.sub_index(&self.top, self.field.sub(x, v)).expect("in F_{q^n}") {
                    None => continue 'points, // chi^j(0) = 0 for every j, the trivial one included
                    Some(idx) => key.push((idx % d).gcd(&d)),
                }
            }
            key.sort_unstable();
            *classes.entry(key).or_insert(0) += 1;
        }
        let mut total = CycloSum::zero(d);
        for (gcds, count) in classes {
            let product = gcds
                .iter()
                .fold(CycloSum::constant(d, 1), |acc, &g| acc.mul_kernel(g));
            total.add_scaled(&product, count);
        }
        total
    }

    /// `M` through the character-sum expansion, or `None` if the exact sum
    /// is not `d^k` times a non-negative integer (which would be a defect).
    pub fn count_via_charsum(&self) -> Option<u64> {
        let value = self.charsum_total().as_integer()?;
        let scale = (self.order as i64).checked_pow(self.points.len() as u32)?;
        (value >= 0 && value % scale == 0).then(|| (value / scale) as u64)
    }
}

/// `q * prod_i gcd(d d_i, n) / (d d_i)`.
pub fn main_term(q: u64, d: u64, n: u32, degrees: &[u32]) -> Ratio<i128> {
    degrees.iter().fold(Ratio::from_integer(q as i128), |acc, &di| {
        let ddi = d as i128 * di as i128;
        acc * Ratio::new(ddi.gcd(&(n as i128)), ddi)
    })
}

fn abs_dev(m: u64, main: &Ratio<i128>) -> Ratio<i128> {
    let diff = Ratio::from_integer(m as i128) - main;
    if diff < Ratio::from_integer(0) {
        -diff
    } else {
        diff
    }
}

fn base_report(task: &str, inst: &SystemInstance<'_>) -> VerdictReport {
    let mut r = VerdictReport::new(task)
        .with_param("q", inst.q())
        .with_param("n", inst.n())
        .with_param("d", inst.d())
        .with_param("k", inst.k() as u64);
    r.set_param("points", report::elems(inst.points()));
    r.set_param("degrees", inst.degrees().to_vec());
    r
}

fn record_counts(r: &mut VerdictReport, inst: &SystemInstance<'_>) -> u64 {
    let m = inst.count_solutions();
    let via = inst.count_via_charsum();
    r.set_result("m", report::exact_int(m));
    r.set_result("m_charsum", via.map(report::exact_int).unwrap_or(serde_json::Value::Null));
    r.require("oracle_agrees", via == Some(m));
    m
}

/// `|M - q/d^k| <= k sqrt(q)` for distinct `v_i` in `F_q`.
pub fn verify_lemma1(inst: &SystemInstance<'_>) -> Result<VerdictReport> {
    if inst.n() != 1 {
        return Err(Error::InvalidParameter("the base-field count needs n = 1".into()));
    }
    let mut r = base_report("lemma1", inst);
    let m = record_counts(&mut r, inst);
    let main = Ratio::new(inst.q() as i128, (inst.d() as i128).pow(inst.k() as u32));
    r.set_result("main_term", report::rational(&main));
    let dev = abs_dev(m, &main);
    let check = BoundCheck::new(
        report::ratio_to_f64(&dev),
        inst.k() as f64 * (inst.q() as f64).sqrt(),
    );
    check.record(&mut r, "");
    r.require("bound_holds", check.holds());
    Ok(r)
}

/// Compares `|M - main_term|` with `(sum d_i - 1) sqrt(q)`.
///
/// When some `v_i` lies in `F_q`, the terms whose character is trivial on
/// `x - v_i` still vanish at `x = v_i`, so their sums fall short of `q`
/// (with `k = 1`, `d_1 = 1`: `M = (q - 1) gcd(d, n)/d` against `q gcd(d, n)/d`).
/// Such instances may exceed the strict bound by at most `k`; they are
/// reported as [`Verdict::PassWithAllowance`] instead of being hidden.
pub fn verify_thm12(inst: &SystemInstance<'_>) -> Result<VerdictReport> {
    if (inst.q() - 1) % inst.d() != 0 {
        return Err(Error::OrderMismatch { d: inst.d(), group: inst.q() - 1 });
    }
    let mut r = base_report("thm12", inst);
    let m = record_counts(&mut r, inst);
    let main = main_term(inst.q(), inst.d(), inst.n(), inst.degrees());
    r.set_result("main_term", report::rational(&main));
    let dev = report::ratio_to_f64(&abs_dev(m, &main));
    let sum_deg: u64 = inst.degrees().iter().map(|&x| x as u64).sum();
    let bound = sum_deg.saturating_sub(1) as f64 * (inst.q() as f64).sqrt();
    let strict = BoundCheck::new(dev, bound);
    strict.record(&mut r, "");

    let allowance_applies = inst.degrees().contains(&1);
    let allowance = if allowance_applies { inst.k() as f64 } else { 0.0 };
    r.set_result("allowance", allowance);
    let relaxed = BoundCheck::new(dev, bound + allowance);
    r.set_result("strict_holds", strict.holds());
    r.verdict = if strict.holds() {
        r.verdict
    } else if allowance_applies && relaxed.holds() {
        r.verdict.combine(Verdict::PassWithAllowance)
    } else {
        Verdict::Fail
    };
    Ok(r)
}

/// `|M - q/d^k| <= (2k - 1) sqrt(q)` for `n = 2`, `v_i` outside `F_q`.
pub fn verify_thm13(inst: &SystemInstance<'_>) -> Result<VerdictReport> {
    if inst.n() != 2 {
        return Err(Error::InvalidParameter("this count needs n = 2".into()));
    }
    if let Some(i) = inst.degrees().iter().position(|&di| di == 1) {
        return Err(Error::VInBaseField(i));
    }
    let mut r = base_report("thm13", inst);
    let m = record_counts(&mut r, inst);
    let main = Ratio::new(inst.q() as i128, (inst.d() as i128).pow(inst.k() as u32));
    r.set_result("main_term", report::rational(&main));
    let dev = report::ratio_to_f64(&abs_dev(m, &main));
    let bound = (2 * inst.k() as u64).saturating_sub(1) as f64 * (inst.q() as f64).sqrt();
    let check = BoundCheck::new(dev, bound);
    check.record(&mut r, "");
    r.require("bound_holds", check.holds());
    Ok(r)
}

/// Exhaustive check that `x` is a d-th power in `top` iff its norm down to
/// `base` is a d-th power in `base`, for every `x` in `top` (`d | |base| - 1`).
pub fn verify_lemma21(field: &FieldCtx, base: SubfieldHandle, top: SubfieldHandle, d: u64) -> Result<VerdictReport> {
    if d < 2 || base.unit_order() % d != 0 {
        return Err(Error::OrderMismatch { d, group: base.unit_order() });
    }
    if !base.is_subfield_of(&top) {
        return Err(Error::InvalidSubfieldDegree { sub: base.degree(), ambient: top.degree() });
    }
    let mut checked = 0u64;
    let mut powers = 0u64;
    let mut failures = 0u64;
    let mut witness = None;
    for x in field.elements(&top) {
        let direct = field.dth_power_test(x, d, &top)?;
        let reduced = field.dth_power_test(field.norm_to(x, &base, &top)?, d, &base)?;
        checked += 1;
        powers += direct as u64;
        if direct != reduced {
            failures += 1;
            witness.get_or_insert(x);
        }
    }
    let mut r = VerdictReport::new("lemma21")
        .with_param("p", field.characteristic())
        .with_param("q", base.order())
        .with_param("n", top.degree() / base.degree())
        .with_param("d", d);
    r.set_result("checked", checked);
    r.set_result("dth_powers", powers);
    r.set_result("failures", failures);
    r.require("equivalence_holds", failures == 0);
    r.witness = witness.map(report::elem);
    Ok(r)
}

/// Draws `k` pairwise non-conjugate (over `base`) elements of `pool` from a
/// SplitMix64 stream: a draw `r` in `[0, |pool|)` maps to zero for `r = 0`
/// and to the pool element of subfield index `r - 1` otherwise. Draws that
/// fail `accept` or collide with an earlier conjugate class are rejected.
pub fn random_points(
    field: &FieldCtx,
    pool: &SubfieldHandle,
    base: &SubfieldHandle,
    k: usize,
    rng: &mut SplitMix64,
    accept: impl Fn(FieldElem) -> bool,
) -> Result<Vec<FieldElem>> {
    let mut chosen: Vec<FieldElem> = Vec::with_capacity(k);
    let mut attempts = 0u64;
    let limit = 64 * pool.order() + 1024;
    while chosen.len() < k {
        attempts += 1;
        if attempts > limit {
            return Err(Error::SearchExhausted(format!(
                "could not draw {k} non-conjugate points from a field of order {}",
                pool.order()
            )));
        }
        let r = rng.below(pool.order());
        let v = if r == 0 { FieldElem::Zero } else { field.from_sub_index(pool, r - 1) };
        if accept(v) && !chosen.iter().any(|&c| field.are_conjugate(c, v, base)) {
            chosen.push(v);
        }
    }
    Ok(chosen)
}
