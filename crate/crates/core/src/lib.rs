//! Simulation and validation of classical and quantum queue automata.
//!
//! A queue automaton is a finite control attached to a FIFO store: symbols are
//! enqueued at the rear and inspected or dequeued at the front. The quantum
//! variant evolves a complex-amplitude superposition of configurations and is
//! observed after every step (measure-many semantics): halting mass accumulates
//! into acceptance/rejection probabilities while non-halting mass continues
//! unrenormalized.
//!
//! The crate is split along those lines:
//!
//! - [`queue`], [`config`], [`amp`], [`machine`]: the shared domain types —
//!   queue words, configurations, superpositions, amplitudes, and the machine
//!   records for both the classical and the quantum model (including sink
//!   completion of partial quantum tables).
//! - [`classical`]: deterministic/nondeterministic runs, real-time and
//!   quasi-real-time diagnostics, and an empirical reversibility check.
//! - [`quantum`]: the superposition evolution operator, measurement, the
//!   real-time and general runners, and deterministic step traces.
//! - [`wellformed`]: the local probability, orthogonality, and separability
//!   conditions on transition tables, the simplified per-symbol isometry test,
//!   and configuration-level isometry/co-isometry diagnostics.
//! - [`zoo`]: reference languages with membership oracles, the built-in example
//!   machines (in table-literal and prose-corrected variants), a reversible
//!   real-time classical recognizer, and small-string enumeration.
//! - [`random`]: seeded generation of per-key-orthonormal machines and random
//!   superpositions for property testing.
//!
//! The crate is `no_std` + `alloc`; file formats and the command-line surface
//! live in the companion `qqa` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod amp;
pub mod classical;
pub mod config;
pub mod machine;
pub mod quantum;
pub mod queue;
pub mod random;
pub mod wellformed;
pub mod zoo;

pub use amp::Amp;
pub use config::{Config, Superposition, Tape, TapeSym};
pub use machine::{ClassicalMachine, Completion, Dir, Machine, MachineError, QuantumMachine, StateId};
pub use queue::{FrontRear, QOp, QSym, QueueWord};

/// Structural tolerance for unitarity/orthogonality style checks.
pub const STRUCTURAL_TOL: f64 = 1e-9;
/// Tolerance for accumulated probabilities.
pub const PROB_TOL: f64 = 1e-6;
/// Superposition terms below this magnitude are pruned.
pub const PRUNE_EPS: f64 = 1e-12;

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}
