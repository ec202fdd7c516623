//! Exact differential operators on free associative algebras.
//!
//! The workspace provides:
//! - [`freealg`]: words, elements, scalars (Laurent polynomials in the
//!   parameters q_ij over exact rationals), bicharacters, gradings.
//! - [`diffops`]: the classical operator calculus (reduction-free normal
//!   forms, composition, canonical forms, power-series forms, inner
//!   derivations, simplicity descent).
//! - [`betaops`]: the bicharacter-twisted (colour) calculus.
//! - [`qops`]: the fully quantum calculus with grading twists sigma.
//! - [`oracle`]: independent evaluation-based checking (equality on all
//!   words up to a bound, linear-independence certificates, shuffles).
//! - [`exprio`]: expression parsing/printing, JSON emission, and the
//!   `ncdiff` command-line driver with its identity catalog.

pub mod betaops;
pub mod diffops;
pub mod exprio;
pub mod freealg;
pub mod oracle;
pub mod qops;

pub use betaops::{BetaCanonicalOperator, BetaContext, BetaOperator};
pub use exprio::{Mode, SessionConfig, Value};
pub use diffops::{
    CanonicalOperator, DelKey, NormalOperator, OpError, OpKey, PsForm, ReductionStep,
};
pub use freealg::{AlgebraElement, Bicharacter, MultiDegree, Scalar, Word};
pub use oracle::{EqualityOutcome, IdentityReport, ShuffleSet};
pub use qops::{QDelKey, QOpKey, QOperator};
