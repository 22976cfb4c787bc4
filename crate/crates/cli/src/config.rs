//! Command-line surface. A [`RunConfig`] is a task plus its options and is
//! embedded in every emitted report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "paley", version, about = "Exact finite-field checks of residue counts, character sums and maximal cliques")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one statement on one instance, a seeded batch, or its full grid.
    Verify {
        task: VerifyTask,
        #[command(flatten)]
        opts: Opts,
    },
    /// Tabulate observed maximal-clique sizes over a parameter grid.
    Sweep {
        kind: SweepKind,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyTask {
    /// Base-field residue count, `|M - q/d^k| <= k sqrt(q)`.
    Lemma1,
    /// Residue count over a subfield with main term and allowance.
    Thm12,
    /// Quadratic-extension count, `|M - q/d^k| <= (2k-1) sqrt(q)`.
    Thm13,
    /// Norm reduction of the d-th power test.
    Lemma21,
    /// Weil bound for squarefree polynomials.
    Weil,
    /// Function-field character sums over irreducible factors.
    Thm32,
    /// Total-multiplicity collapse for conjugate orbits.
    Cor35,
    /// Induced subgraph on a subfield.
    Lemma41,
    /// Strongly regular parameters.
    Srg,
    /// Prescribed-degree cliques.
    Prop42,
    /// Divisor chain for `(m, d)`.
    Chain,
    /// Maximal clique D ∪ D' in GP(q^d, d).
    Thm14,
    /// (F_q, alpha)-cliques in GP(q^2, d).
    Thm15,
    /// (F_q, alpha)-cliques in Peisert graphs.
    Thm16,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    /// (F_q, alpha)-clique sizes in GP(q^2, d) over a q-range.
    FqAlpha,
    /// D ∪ D' clique sizes over a list of m.
    Thm14,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct Opts {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dprime: Option<u64>,
    /// Base field order (alternative to --p/--e).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qmin: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qmax: Option<u64>,
    /// SplitMix64 seed for v-sets and random instances.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Instances per parameter set, or the representative cap for clique tasks.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reps: Option<u64>,
    /// Largest ambient field, as a power of two.
    #[arg(long, default_value_t = 24)]
    pub ambient_bits: u32,
    /// Worker threads (default: available cores).
    #[arg(long)]
    #[serde(skip)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
    /// Residue count with one base-field point and n = d.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub degenerate_probe: bool,
    /// Write the graph as a DIMACS edge list (srg only).
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub export_dimacs: Option<PathBuf>,
    /// Use the Peisert graph instead of GP (srg only).
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub peisert: bool,
    /// Prescribed degrees d_1 | ... | d_k (prop42).
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub degrees: Vec<u64>,
    /// List of m values (thm14 sweep).
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ms: Vec<u64>,
    /// Largest polynomial degree (weil).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    /// Degree of the root field over the coefficient field (thm32, cor35).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext: Option<u32>,
    /// Use every u outside F_q instead of capped representatives.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub all_u: bool,
    /// Run the task's built-in deterministic grid.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub grid: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command", content = "name")]
pub enum TaskId {
    Verify(VerifyTask),
    Sweep(SweepKind),
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub task: TaskId,
    #[serde(flatten)]
    pub opts: Opts,
}

impl RunConfig {
    pub fn verify(task: VerifyTask, opts: Opts) -> Self {
        RunConfig { task: TaskId::Verify(task), opts }
    }

    pub fn sweep(kind: SweepKind, opts: Opts) -> Self {
        RunConfig { task: TaskId::Sweep(kind), opts }
    }

    pub fn from_cli(cli: Cli) -> Self {
        match cli.command {
            Command::Verify { task, opts } => Self::verify(task, opts),
            Command::Sweep { kind, opts } => Self::sweep(kind, opts),
        }
    }
}
