//! Three-valued Łukasiewicz logic and its realization inside stabilizer codes.
//!
//! The crate is organised bottom-up:
//!
//! - [`mv3`]: exact MV₃ scalars and vectors, derived connectives, exhaustive axiom checks.
//! - [`cubic`]: signed-set faces of the n-cube, the embedding into MV₃ vectors and the
//!   MV-derived cubic operations next to their geometric counterparts.
//! - [`pauli`]: bit-packed, phase-tracked Pauli operators.
//! - [`stab`]: stabilizer codes, completion, centralizers, error classification.
//! - [`dense`]: small exact matrix oracle for projections, commutants and spans.
//! - [`ulam`]: the one-lie Rényi-Ulam search game, including a stabilizer-embedded prover.
//!
//! Exhaustive checks run through [`Execution`], which uses rayon when the `parallel`
//! feature is enabled and falls back to plain iteration otherwise.

pub mod cubic;
pub mod dense;
pub mod mv3;
mod par;
pub mod pauli;
pub mod stab;
pub mod ulam;

pub use par::Execution;
