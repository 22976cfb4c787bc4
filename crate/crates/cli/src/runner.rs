//! Job fan-out, error classification and the exit-code contract.

use std::fmt;
use std::io;
use std::time::Instant;

use paley_core::arith;
use paley_core::{Error, FieldCtx, SplitMix64, Verdict, VerdictReport};
use rayon::prelude::*;

use crate::config::{Opts, RunConfig, SweepKind, TaskId, VerifyTask};
use crate::envelope::{Envelope, FieldInfo};
use crate::tasks;

/// One unit of work, usually everything computed inside one ambient field.
pub type Job = Box<dyn FnOnce() -> paley_core::Result<Vec<Envelope>> + Send>;

#[derive(Debug)]
pub enum CliError {
    Param(String),
    Cap(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) | CliError::Io(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Param(s) => write!(f, "parameter error: {s}"),
            CliError::Cap(s) => write!(f, "ambient cap: {s}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::AmbientTooLarge { .. } => CliError::Cap(e.to_string()),
            other => CliError::Param(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// 0 when no report failed, 1 otherwise.
pub fn exit_code(envelopes: &[Envelope]) -> i32 {
    if envelopes.iter().any(|e| e.verdict == Verdict::Fail) {
        1
    } else {
        0
    }
}

/// Builds the jobs for `config` and runs them on a pool of `--jobs`
/// threads. Output order is the job order, whatever the pool width.
pub fn run(config: &RunConfig) -> Result<Vec<Envelope>, CliError> {
    let jobs = build_jobs(config)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.opts.jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| CliError::Param(e.to_string()))?;
    let results: Vec<_> = pool.install(|| jobs.into_par_iter().map(|job| job()).collect());
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn build_jobs(config: &RunConfig) -> Result<Vec<Job>, CliError> {
    match config.task {
        TaskId::Verify(t) => match t {
            VerifyTask::Lemma1 => tasks::residues::lemma1(config),
            VerifyTask::Thm12 => tasks::residues::thm12(config),
            VerifyTask::Thm13 => tasks::residues::thm13(config),
            VerifyTask::Lemma21 => tasks::residues::lemma21(config),
            VerifyTask::Weil => tasks::funcfield::weil(config),
            VerifyTask::Thm32 => tasks::funcfield::thm32(config),
            VerifyTask::Cor35 => tasks::funcfield::cor35(config),
            VerifyTask::Lemma41 => tasks::graphs::lemma41(config),
            VerifyTask::Srg => tasks::graphs::srg(config),
            VerifyTask::Prop42 => tasks::graphs::prop42(config),
            VerifyTask::Chain => tasks::graphs::chain(config),
            VerifyTask::Thm14 => tasks::graphs::thm14(config),
            VerifyTask::Thm15 => tasks::graphs::thm15(config),
            VerifyTask::Thm16 => tasks::graphs::thm16(config),
        },
        TaskId::Sweep(SweepKind::FqAlpha) => tasks::graphs::sweep_fq_alpha(config),
        TaskId::Sweep(SweepKind::Thm14) => tasks::graphs::sweep_thm14(config),
    }
}

/// Shared context handed to each job.
#[derive(Clone)]
pub struct Emit {
    pub run: RunConfig,
}

impl Emit {
    pub fn new(run: &RunConfig) -> Self {
        Emit { run: run.clone() }
    }

    pub fn wrap(&self, ctx: Option<&FieldCtx>, report: VerdictReport) -> Envelope {
        let info = ctx.map(FieldInfo::of);
        Envelope::new(&self.run, info.as_ref(), report)
    }

    pub fn bits(&self) -> u32 {
        self.run.opts.ambient_bits
    }

    pub fn field(&self, p: u64, degree: u32) -> paley_core::Result<FieldCtx> {
        FieldCtx::with_cap(p, degree, self.bits())
    }
}

/// Runs `f` and stores its wall time in the report.
pub fn timed(f: impl FnOnce() -> paley_core::Result<VerdictReport>) -> paley_core::Result<VerdictReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// A per-instance seed mixed from the run seed and the instance key, so
/// that grids are reproducible and independent of job scheduling.
pub fn derive_seed(seed: u64, key: &[u64]) -> u64 {
    key.iter().fold(SplitMix64::new(seed).next_u64(), |acc, &k| {
        SplitMix64::new(acc ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15)).next_u64()
    })
}

/// `(p, e)` for the base field, from `--q` or `--p`/`--e` (`e` defaults to 1).
pub fn base_field(opts: &Opts) -> Result<(u64, u32), CliError> {
    match (opts.q, opts.p) {
        (Some(q), None) => {
            arith::prime_power(q).ok_or_else(|| CliError::Param(format!("q = {q} is not a prime power")))
        }
        (None, Some(p)) => {
            if !arith::is_prime(p) {
                return Err(CliError::Param(format!("p = {p} is not prime")));
            }
            let e = opts.e.unwrap_or(1);
            if e == 0 {
                return Err(CliError::Param("e must be >= 1".into()));
            }
            Ok((p, e))
        }
        (Some(q), Some(p)) => {
            let (pp, e) = arith::prime_power(q).ok_or_else(|| CliError::Param(format!("q = {q} is not a prime power")))?;
            if pp != p || opts.e.is_some_and(|x| x != e) {
                return Err(CliError::Param("--q disagrees with --p/--e".into()));
            }
            Ok((p, e))
        }
        (None, None) => Err(CliError::Param("the base field needs --q or --p".into())),
    }
}

pub fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Param(format!("--{flag} is required")))
}

/// Checks `p^degree` against the ambient cap before a job is queued, so cap
/// violations surface as exit code 3 without running anything.
pub fn check_cap(p: u64, degree: u32, bits: u32) -> Result<(), CliError> {
    let cap_bits = bits.min(paley_core::ffield::MAX_AMBIENT_BITS);
    match arith::checked_pow(p, degree) {
        Some(n) if n <= 1u64 << cap_bits => Ok(()),
        _ => Err(Error::AmbientTooLarge { p, degree, cap_bits }.into()),
    }
}
