//! Exact finite-field experiments on power residues over shifted subfields,
//! function-field character sums, and maximal cliques in generalized Paley
//! and Peisert graphs.
//!
//! The crate is organized bottom-up:
//!
//! * [`ffield`]: table-driven finite fields in discrete-log form.
//! * [`cyclo`]: characters of prescribed order and exact sums in `Z[zeta_d]`.
//! * [`residues`]: counting `x` in a subfield with every `x - v_i` a d-th power.
//! * [`funcfield`]: polynomials over subfields and Dirichlet characters
//!   defined through norms of evaluations at a root.
//! * [`graphs`]: implicit Cayley graphs `GP(q, d)` and `P*_q`.
//! * [`cliques`]: clique certificates and the three maximal-clique constructions.
//!
//! Every check produces a [`VerdictReport`].

pub mod arith;
pub mod cliques;
pub mod cyclo;
pub mod error;
pub mod ffield;
pub mod funcfield;
pub mod graphs;
pub mod report;
pub mod residues;
pub mod rng;

pub use cyclo::{CharSpec, CharValue, CycloSum};
pub use error::{Error, Result};
pub use ffield::{FieldCtx, FieldElem, SubfieldHandle, DEFAULT_AMBIENT_BITS};
pub use graphs::{CayleyView, GraphKind};

pub use report::{BoundCheck, Verdict, VerdictReport};
pub use rng::SplitMix64;
