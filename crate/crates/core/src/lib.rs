//! Weighted finite automata over finite commutative rings, and a decision
//! procedure for reversibility of the rational series they compute.
//!
//! A weighted automaton assigns every word a coefficient in a finite
//! commutative ring — summed over runs, each run weighing in with the product
//! of its entry, transition, and exit weights. The automaton is *reversible*
//! when no state has two equally-labelled outgoing or incoming transitions
//! with nonzero weight. Whether a given series admits *some* reversible
//! realization turns out to be a property of finitely many regular languages:
//! the series `r` is reversible exactly when, for every ring element `x`, the
//! support of `r + x · Σ*` has a syntactic monoid whose idempotents commute.
//!
//! The crate provides the arithmetic ([`ring`]), the automata ([`wfa`]), the
//! classical language side ([`lang`], [`monoid`]), the decision procedure and
//! the explicit witness constructions ([`decide`]), and strict document
//! parsing and printing ([`io`]).
//!
//! ```
//! use revwa::{decide_reversibility, DecideOptions, Ring};
//!
//! // The characteristic series of a^+ over Z_2, realized reversibly by
//! // three states: two initial weights 1 and one "correcting" component.
//! let wa = revwa::io::parse_weighted_automaton(
//!     r#"{"ring":{"kind":"zn","n":2},"alphabet":["a"],"states":3,
//!         "initial":{"0":1,"1":1},"final":{"0":1,"1":1,"2":1},
//!         "transitions":[[1,"a",1,1]]}"#,
//! )
//! .unwrap();
//! assert!(wa.is_reversible());
//! assert_eq!(wa.ring(), &Ring::f2());
//! let report = decide_reversibility(&wa, &DecideOptions::default());
//! assert!(report.reversible);
//! ```

pub mod alphabet;
pub mod decide;
pub mod error;
pub mod io;
pub mod lang;
pub mod monoid;
pub mod ring;
pub mod wfa;

pub use alphabet::{Alphabet, Word};
pub use decide::{
    classify_language, decide_reversibility, ecom_language_check, parity_support_dfa,
    verify_witness, witness_characteristic_series, witness_union_f2, Classification,
    DecideOptions, DecisionReport, Decomposition, MonoidSummary, ShiftReport,
    WitnessVerification,
};
pub use error::{Error, Result};
pub use lang::{support_dfa, BoolOp, Dfa, Nfa};
pub use monoid::{
    check_omega_leq_one, syntactic_monoid, EcomViolation, OmegaLeqViolation, OmegaPower,
    Transformation, TransitionMonoid,
};
pub use ring::{Ring, RingElement, RingError, RingSpec, Subring};
pub use wfa::{
    LinearRepresentation, ReversibilityViolation, Run, ScalarSide, WeightedAutomaton,
};
