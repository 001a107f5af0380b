//! Deterministic weighted automata under interval observations.
//!
//! A deterministic weighted automaton (DWA) assigns every non-empty word the
//! sum of the integer transition weights along its run. A partially
//! observable DWA (PODWA) pairs such an automaton with a finite list of cut
//! points and reveals only which of the induced intervals contains the value.
//! This crate provides:
//!
//! - the data model, evaluation/observation semantics and a line-based text
//!   format ([`automaton`], [`format`]),
//! - an observational-equivalence engine over the weighted product graph,
//!   producing verified witness words or per-query refutation certificates
//!   ([`engine`]),
//! - complement and affine rescaling, exact value equivalence and exact
//!   minimization, and quotients by transition congruences ([`transforms`]),
//! - minimization by state merging under a weight bound, driven by a
//!   counterexample-guided weight search ([`omin`]),
//! - sample consistency checking and two fitting procedures ([`fitting`]),
//! - generators for the reference constructions used throughout the test
//!   suites: counting examples, the exponential-weight family, subset-sum
//!   equivalence instances, graph-coloring merge instances, formula samples
//!   and seeded random instances ([`generators`]).
//!
//! ```
//! use podwa::generators::{lambda_n, lambda_n_minimal};
//! use podwa::engine::{equivalent, EngineConfig, EngineVerdict};
//!
//! let a = lambda_n(2).unwrap();
//! let b = lambda_n_minimal(2).unwrap();
//! let verdict = equivalent(&a, &b, &EngineConfig::default()).unwrap();
//! assert_eq!(verdict, EngineVerdict::Equivalent);
//! ```

pub mod automaton;
pub mod engine;
pub mod fitting;
pub mod format;
pub mod generators;
pub mod omin;
pub mod transforms;

pub use automaton::{
    Alphabet, Dwa, EvalError, Letter, ObservationScheme, Podwa, RawDwa, RawPodwa,
    RawTransition, State, Violation, Word,
};
