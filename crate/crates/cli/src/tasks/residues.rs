//! Residue counts over seeded point sets and the norm-reduction check.

use paley_core::arith;
use paley_core::residues::{self, SystemInstance};
use paley_core::{FieldCtx, SplitMix64, SubfieldHandle, VerdictReport};

use super::tag_seed;
use crate::config::RunConfig;
use crate::envelope::Envelope;
use crate::runner::{base_field, check_cap, derive_seed, need, timed, CliError, Emit, Job};

const LEMMA1_GRID_QMAX: u64 = 1000;
const LEMMA1_GRID_DS: [u64; 4] = [2, 3, 4, 5];
const LEMMA1_GRID_REPS: u64 = 200;
const THM12_GRID_BITS: u32 = 20;
const THM12_GRID_REPS: u64 = 50;
const LEMMA21_GRID_BITS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Lemma1,
    Thm12,
    Probe,
    Thm13,
}

impl Kind {
    fn tag(self) -> u64 {
        match self {
            Kind::Lemma1 => 1,
            Kind::Thm12 => 12,
            Kind::Probe => 120,
            Kind::Thm13 => 13,
        }
    }
}

/// One seeded instance of a residue count. Points come from `F_q` for the
/// base-field statements and the probe, from `F_{q^n}` otherwise (outside
/// `F_q` for the quadratic statement).
fn instance(ctx: &FieldCtx, base: SubfieldHandle, n: u32, d: u64, k: usize, seed: u64, rep: u64, kind: Kind) -> paley_core::Result<VerdictReport> {
    let top = ctx.subfield(base.degree() * n)?;
    let s = derive_seed(seed, &[kind.tag(), base.order(), n as u64, d, k as u64, rep]);
    let mut rng = SplitMix64::new(s);
    let points = match kind {
        Kind::Lemma1 | Kind::Probe => residues::random_points(ctx, &base, &base, k, &mut rng, |_| true)?,
        Kind::Thm12 => residues::random_points(ctx, &top, &base, k, &mut rng, |_| true)?,
        Kind::Thm13 => residues::random_points(ctx, &top, &base, k, &mut rng, |v| !ctx.contains(&base, v))?,
    };
    let inst = SystemInstance::new(ctx, base, n, d, points)?;
    let mut r = timed(|| match kind {
        Kind::Lemma1 => residues::verify_lemma1(&inst),
        Kind::Thm12 | Kind::Probe => residues::verify_thm12(&inst),
        Kind::Thm13 => residues::verify_thm13(&inst),
    })?;
    if kind == Kind::Probe {
        // One base-field point with n = d: every nonzero x - v is a d-th
        // power in F_{q^d}, so exactly the root x = v is missed.
        let m = inst.count_solutions();
        r.set_result("probe", true);
        r.set_result("deficit", inst.q() as i64 - m as i64);
        r.require("deficit_is_one", m + 1 == inst.q());
    }
    tag_seed(&mut r, s, rep);
    Ok(r)
}

fn batch(
    emit: Emit,
    p: u64,
    e: u32,
    n: u32,
    cases: Vec<(u64, usize, u64, Kind)>,
) -> Job {
    Box::new(move || {
        let ctx = emit.field(p, e * n)?;
        let base = ctx.subfield(e)?;
        let seed = emit.run.opts.seed;
        cases
            .into_iter()
            .map(|(d, k, rep, kind)| Ok(emit.wrap(Some(&ctx), instance(&ctx, base, n, d, k, seed, rep, kind)?)))
            .collect::<paley_core::Result<Vec<Envelope>>>()
    })
}

fn single_cases(cfg: &RunConfig, kind: Kind) -> Result<(u64, u32, u32, Vec<(u64, usize, u64, Kind)>), CliError> {
    let o = &cfg.opts;
    let (p, e) = base_field(o)?;
    let d = need(o.d, "d")?;
    let (n, k) = match kind {
        Kind::Lemma1 => {
            if o.n.is_some_and(|n| n != 1) {
                return Err(CliError::Param("lemma1 is the base-field count, n = 1".into()));
            }
            (1, need(o.k, "k")?)
        }
        Kind::Thm13 => {
            if o.n.is_some_and(|n| n != 2) {
                return Err(CliError::Param("thm13 is the quadratic count, n = 2".into()));
            }
            (2, need(o.k, "k")?)
        }
        Kind::Probe => {
            let n = need(o.n, "n")?;
            if n as u64 != d {
                return Err(CliError::Param(format!("the degenerate probe needs n = d, got n = {n}, d = {d}")));
            }
            if o.k.is_some_and(|k| k != 1) {
                return Err(CliError::Param("the degenerate probe uses k = 1".into()));
            }
            (n, 1)
        }
        Kind::Thm12 => (need(o.n, "n")?, need(o.k, "k")?),
    };
    let q = arith::checked_pow(p, e).ok_or_else(|| CliError::Param("q overflows".into()))?;
    if (q - 1) % d != 0 || d < 2 {
        return Err(CliError::Param(format!("need d >= 2 dividing q - 1, got q = {q}, d = {d}")));
    }
    check_cap(p, e * n, o.ambient_bits)?;
    let reps = o.reps.unwrap_or(1);
    Ok((p, e, n, (0..reps).map(|rep| (d, k, rep, kind)).collect()))
}

/// `verify lemma1`: one `(q, d, k)` with `--reps` seeded point sets, or the
/// grid of every prime power `q <= 1000` with `d` in 2..=5 dividing `q - 1`.
pub fn lemma1(cfg: &RunConfig) -> Result<Vec<Job>, CliError> {
    let emit = Emit::new(cfg);
    if !cfg.opts.grid {
        let (p, e, n, cases) = single_cases(cfg, Kind::Lemma1)?;
        return Ok(vec![batch(emit, p, e, n, cases)]);
    }
    let mut jobs = Vec::new();
    for q in arith::prime_powers_in(2, LEMMA1_GRID_QMAX) {
        let (p, e) = arith::prime_power(q).expect("prime power");
        let mut cases = Vec::new();
        for d in LEMMA1_GRID_DS.into_iter().filter(|d| (q - 1) % d == 0) {
            for rep in 0..LEMMA1_GRID_REPS {
                let k = (1 + rep as usize % 4).min(q as usize);
                cases.push((d, k, rep, Kind::Lemma1));
            }
        }
        if !cases.is_empty() {
            check_cap(p, e, cfg.opts.ambient_bits)?;
            jobs.push(batch(emit.clone(), p, e, 1, cases));
        }
    }
    Ok(jobs)
}

/// `verify thm12`: one `(q, n, d, k)`, the degenerate probe, or the grid of
/// all `(p, e, n >= 2)` with `q^n <= 2^20` and every `d >= 2` dividing `q - 1`.
pub fn thm12(cfg: &RunConfig) -> Result<Vec<Job>, CliError> {
    let emit = Emit::new(cfg);
    let o = &cfg.opts;
    if !o.grid {
        let kind = if o.degenerate_probe { Kind::Probe } else { Kind::Thm12 };
        let (p, e, n, cases) = single_cases(cfg, kind)?;
        return Ok(vec![batch(emit, p, e, n, cases)]);
    }
    let mut jobs = Vec::new();
    for p in (2..=1u64 << (THM12_GRID_BITS / 2)).filter(|&p| arith::is_prime(p)) {
        for e in 1.. {
            let Some(q) = arith::checked_pow(p, e).filter(|&q| q * q <= 1 << THM12_GRID_BITS) else { break };
            let ds: Vec<u64> = arith::divisors(q - 1).into_iter().filter(|&d| d >= 2).collect();
            if ds.is_empty() {
                continue;
            }
            for n in 2u32.. {
                if arith::checked_pow(q, n).map_or(true, |qn| qn > 1 << THM12_GRID_BITS) {
                    break;
                }
                let mut cases = Vec::new();
                for &d in &ds {
                    for rep in 0..THM12_GRID_REPS {
                        cases.push((d, 1 + rep as usize % 3, rep, Kind::Thm12));
                    }
                    if d == n as u64 {
                        cases.push((d, 1, 0, Kind::Probe));
                    }
                }
                check_cap(p, e * n, o.ambient_bits)?;
                jobs.push(batch(emit.clone(), p, e, n, cases));
            }
        }
    }
    Ok(jobs)
}

/// `verify thm13`: `n = 2`, points outside `F_q`.
pub fn thm13(cfg: &RunConfig) -> Result<Vec<Job>, CliError> {
    let (p, e, n, cases) = single_cases(cfg, Kind::Thm13)?;
    Ok(vec![batch(Emit::new(cfg), p, e, n, cases)])
}

/// `verify lemma21`: one tower `F_q ⊂ F_{q^n}` and one `d`, or every
/// tower and `d` inside each `F_{p^E}` with `E >= 2`, `p^E <= 2^16`.
pub fn lemma21(cfg: &RunConfig) -> Result<Vec<Job>, CliError> {
    let emit = Emit::new(cfg);
    let o = &cfg.opts;
    if !o.grid {
        let (p, e) = base_field(o)?;
        let n = need(o.n, "n")?;
        let d = need(o.d, "d")?;
        check_cap(p, e * n, o.ambient_bits)?;
        return Ok(vec![Box::new(move || {
            let ctx = emit.field(p, e * n)?;
            let r = timed(|| residues::verify_lemma21(&ctx, ctx.subfield(e)?, ctx.whole(), d))?;
            Ok(vec![emit.wrap(Some(&ctx), r)])
        })]);
    }
    let mut jobs: Vec<Job> = Vec::new();
    for p in (2..=1u64 << (LEMMA21_GRID_BITS / 2)).filter(|&p| arith::is_prime(p)) {
        for big in 2u32.. {
            if arith::checked_pow(p, big).map_or(true, |x| x > 1 << LEMMA21_GRID_BITS) {
                break;
            }
            check_cap(p, big, o.ambient_bits)?;
            let emit = emit.clone();
            jobs.push(Box::new(move || {
                let ctx = emit.field(p, big)?;
                let mut out = Vec::new();
                let degs = arith::divisors(big as u64);
                for &e in &degs {
                    for &top in degs.iter().filter(|&&t| t % e == 0) {
                        let base = ctx.subfield(e as u32)?;
                        let top = ctx.subfield(top as u32)?;
                        for d in arith::divisors(base.unit_order()).into_iter().filter(|&d| d >= 2) {
                            let r = timed(|| residues::verify_lemma21(&ctx, base, top, d))?;
                            out.push(emit.wrap(Some(&ctx), r));
                        }
                    }
                }
                Ok(out)
            }));
        }
    }
    Ok(jobs)
}
