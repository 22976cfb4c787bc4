//! Character sums of polynomial values: the Weil bound, sums over
//! irreducible factors, and conjugate-orbit collapse.

use serde_json::Value;

use paley_core::arith;
use paley_core::funcfield::{self, Factor, IrreducibleByRoot, SubfieldPoly};
use paley_core::residues;
use paley_core::{CharSpec, FieldCtx, SplitMix64, SubfieldHandle, Verdict, VerdictReport};

use super::tag_seed;
use crate::config::RunConfig;
use crate::runner::{base_field, check_cap, derive_seed, need, timed, CliError, Emit, Job};

const WEIL_GRID: [u64; 3] = [13, 17, 25];
const DEFAULT_MAX_DEGREE: usize = 3;

/// `(p, e, n, ext)`: base `F_{p^e}`, coefficients `F_{q^n}`, roots drawn
/// from `F_{q^(n ext)}`.
const TOWER_GRID: [(u64, u32, u32, u32); 12] = [
    (3, 1, 1, 2),
    (5, 1, 1, 2),
    (3, 1, 2, 2),
    (5, 1, 2, 2),
    (7, 1, 2, 2),
    (3, 1, 2, 3),
    (13, 1, 2, 2),
    (3, 2, 2, 2),
    (2, 2, 2, 2),
    (11, 1, 2, 2),
    (3, 1, 3, 2),
    (5, 1, 1, 4),
];
const TOWER_GRID_DMAX: u64 = 12;
const THM32_GRID_REPS: u64 = 12;
const COR35_GRID_REPS: u64 = 6;
const DEFAULT_EXT: u32 = 2;

/// `verify weil`: every monic squarefree polynomial of degree at most
/// `--max-degree` over `F_q`, against a character of each order `d >= 2`
/// dividing `q - 1` (or just `--d`). One report per `(q, d, degree)`.
pub fn weil(cfg: &RunConfig) -> Result<Vec<Job>, CliError> {
    let o = &cfg.opts;
    let max_degree = o.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    let fields: Vec<(u64, u32)> = if o.grid {
        WEIL_GRID.iter().map(|&q| arith::prime_power(q).expect("prime power")).collect()
    } else {
        vec![base_field(o)?]
    };
    let mut jobs: Vec<Job> = Vec::new();
    for (p, e) in fields {
        check_cap(p, e, o.ambient_bits)?;
        let q = p.pow(e);
        let ds: Vec<u64> = match o.d.filter(|_| !o.grid) {
            Some(d) if d >= 2 && (q - 1) % d == 0 => vec![d],
            Some(d) => return Err(CliError::Param(format!("need d >= 2 dividing q - 1, got q = {q}, d = {d}"))),
            None => arith::divisors(q - 1).into_iter().filter(|&d| d >= 2).collect(),
        };
        let emit = Emit::new(cfg);
        jobs.push(Box::new(move || {
            let ctx = emit.field(p, e)?;
            let sub = ctx.whole();
            let mut out = Vec::new();
            for degree in 1..=max_degree {
                let polys: Vec<SubfieldPoly> =
                    funcfield::monic_polys(&ctx, sub, degree).filter(|f| f.is_squarefree(&ctx)).collect();
                for &d in &ds {
                    let chi = CharSpec::new(d, 1, sub)?;
                    let r = timed(|| weil_batch(&ctx, &polys, &chi, degree))?;
                    out.push(emit.wrap(Some(&ctx), r));
                }
            }
            Ok(out)
        }));
    }
    Ok(jobs)
}

fn weil_batch(ctx: &FieldCtx, polys: &[SubfieldPoly], chi: &CharSpec, degree: usize) -> paley_core::Result<VerdictReport> {
    let q = chi.subfield().order();
    let mut r = VerdictReport::new("weil")
        .with_param("q", q)
        .with_param("d", chi.order())
        .with_param("degree", degree as u64);
    let mut failures = 0u64;
    let mut max_value = 0f64;
    let mut min_slack = f64::INFINITY;
    let mut verdict = Verdict::Pass;
    for f in polys {
        let one = funcfield::verify_weil(ctx, f, chi)?;
        let value = one.result["value"].as_f64().unwrap_or(f64::NAN);
        let slack = one.result["slack"].as_f64().unwrap_or(f64::NAN);
        max_value = max_value.max(value);
        min_slack = min_slack.min(slack);
        verdict = verdict.combine(one.verdict);
        if one.is_failure() {
            failures += 1;
            r.witness.get_or_insert_with(|| one.params["poly"].clone());
        }
    }
    r.set_result("polys", polys.len() as u64);
    r.set_result("bound", (degree as f64 - 1.0) * (q as f64).sqrt());
    r.set_result("max_value", max_value);
    r.set_result("min_slack", if polys.is_empty() { Value::Null } else { min_slack.into() });
    r.set_result("failures", failures);
    r.require("bound_holds", failures == 0);
    r.downgrade(verdict);
    Ok(r)
}

#[derive(Clone, Copy)]
enum SumKind {
    Thm32,
    Cor35,
}

struct Tower {
    p: u64,
    e: u32,
    n: u32,
    ext: u32,
    ds: Vec<u64>,
}

fn towers(cfg: &RunConfig, kind: SumKind) -> Result<Vec<Tower>, CliError> {
    let o = &cfg.opts;
    let raw: Vec<(u64, u32, u32, u32)> = if o.grid {
        // Orbits over the coefficient field need n >= 2 to be non-trivial.
        TOWER_GRID.iter().copied().filter(|t| !matches!(kind, SumKind::Cor35) || t.2 >= 2).collect()
    } else {
        let (p, e) = base_field(o)?;
        vec![(p, e, o.n.unwrap_or(1), o.ext.unwrap_or(DEFAULT_EXT))]
    };
    let mut out = Vec::new();
    for (p, e, n, ext) in raw {
        if n == 0 || ext == 0 {
            return Err(CliError::Param("n and --ext must be >= 1".into()));
        }
        check_cap(p, e * n * ext, o.ambient_bits)?;
        let coef_units = p.pow(e * n) - 1;
        let ds = if o.grid {
            arith::divisors(coef_units).into_iter().filter(|&d| (2..=TOWER_GRID_DMAX).contains(&d)).collect()
        } else {
            let d = need(o.d, "d")?;
            if d < 2 || coef_units % d != 0 {
                return Err(CliError::Param(format!("need d >= 2 dividing q^n - 1 = {coef_units}, got {d}")));
            }
            vec![d]
        };
        out.push(Tower { p, e, n, ext, ds });
    }
    Ok(out)
}

fn sum_jobs(cfg: &RunConfig, kind: SumKind) -> Result<Vec<Job>, CliError> {
    let o = &cfg.opts;
    let reps = if o.grid {
        match kind {
            SumKind::Thm32 => THM32_GRID_REPS,
            SumKind::Cor35 => COR35_GRID_REPS,
        }
    } else {
        o.reps.unwrap_or(1)
    };
    let fixed_k = if o.grid { None } else { o.k };
    let mut jobs: Vec<Job> = Vec::new();
    for t in towers(cfg, kind)? {
        let emit = Emit::new(cfg);
        jobs.push(Box::new(move || {
            let ctx = emit.field(t.p, t.e * t.n * t.ext)?;
            let base = ctx.subfield(t.e)?;
            let coef = ctx.subfield(t.e * t.n)?;
            let key = [t.p, t.e as u64, t.n as u64, t.ext as u64];
            let mut out = Vec::new();
            for &d in &t.ds {
                for rep in 0..reps {
                    let s = derive_seed(emit.run.opts.seed, &[key[0], key[1], key[2], key[3], d, rep, kind as u64]);
                    let mut r = match kind {
                        SumKind::Thm32 => {
                            let k = fixed_k.unwrap_or(1 + rep as usize % 3);
                            timed(|| thm32_instance(&ctx, base, coef, d, k, s, rep))?
                        }
                        SumKind::Cor35 => timed(|| cor35_instance(&ctx, base, coef, d, s))?,
                    };
                    r.set_param("ext", t.ext);
                    tag_seed(&mut r, s, rep);
                    out.push(emit.wrap(Some(&ctx), r));
                }
            }
            Ok(out)
        }));
    }
    Ok(jobs)
}

/// `k` pairwise non-conjugate roots from the ambient field, each with a
/// random twist; every seventh repetition uses trivial characters only.
fn thm32_instance(ctx: &FieldCtx, base: SubfieldHandle, coef: SubfieldHandle, d: u64, k: usize, seed: u64, rep: u64) -> paley_core::Result<VerdictReport> {
    let mut rng = SplitMix64::new(seed);
    let roots = residues::random_points(ctx, &ctx.whole(), &base, k, &mut rng, |_| true)?;
    let all_trivial = rep % 7 == 6;
    let mut fs = Vec::with_capacity(k);
    let mut chis = Vec::with_capacity(k);
    for root in roots {
        fs.push(IrreducibleByRoot::new(ctx, root, base, coef)?);
        let twist = if all_trivial { 0 } else { rng.below(d) };
        chis.push(CharSpec::new(d, twist, coef)?);
    }
    funcfield::verify_thm32(ctx, &fs, &chis)
}

/// A random non-empty part of the conjugate orbit of one irreducible `f_1`
/// (at least two conjugates when `n >= 2`), multiplicities in 1..=3.
fn cor35_instance(ctx: &FieldCtx, base: SubfieldHandle, coef: SubfieldHandle, d: u64, seed: u64) -> paley_core::Result<VerdictReport> {
    let mut rng = SplitMix64::new(seed);
    let n = coef.degree() / base.degree();
    let wide = |x| ctx.degree_over(x, &base) > ctx.degree_over(x, &coef);
    let xi = residues::random_points(ctx, &ctx.whole(), &base, 1, &mut rng, |x| n == 1 || wide(x))?[0];
    let c = IrreducibleByRoot::new(ctx, xi, base, coef)?.conjugates();

    // A uniformly sized random part of the orbit, in random order.
    let mut alphas: Vec<u32> = (0..c).collect();
    for i in (1..alphas.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        alphas.swap(i, j);
    }
    alphas.truncate(1 + rng.below(c as u64) as usize);
    let mut factors = Vec::with_capacity(alphas.len());
    for &a in &alphas {
        let mut root = xi;
        for _ in 0..a {
            root = ctx.frobenius(root, base.degree())?;
        }
        factors.push(Factor {
            irreducible: IrreducibleByRoot::new(ctx, root, base, coef)?,
            multiplicity: 1 + rng.below(3) as u32,
        });
    }
    let chi = CharSpec::new(d, rng.below(d), coef)?;
    funcfield::verify_cor35(ctx, &factors, &chi)
}

/// `verify thm32`: sums of `prod chi_i(f_i(a))` over `a in F_q`.
pub fn thm32(cfg: &RunConfig) -> Result<Vec<Job>, CliError> {
    if !cfg.opts.grid {
        need(cfg.opts.k, "k")?;
    }
    sum_jobs(cfg, SumKind::Thm32)
}

/// `verify cor35`: conjugate orbits with multiplicities.
pub fn cor35(cfg: &RunConfig) -> Result<Vec<Job>, CliError> {
    sum_jobs(cfg, SumKind::Cor35)
}
