//! Job builders, one function per subcommand.

pub mod funcfield;
pub mod graphs;
pub mod residues;

use paley_core::VerdictReport;

/// Adds the instance key that reproduces a seeded draw.
pub(crate) fn tag_seed(r: &mut VerdictReport, seed: u64, rep: u64) {
    r.set_param("seed", seed.to_string());
    r.set_param("rep", rep);
}
