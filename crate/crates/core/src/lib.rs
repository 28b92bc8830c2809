//! Exact construction and verification of algebraic circuits and
//! Nullstellensatz refutation certificates.
//!
//! The crate covers the whole pipeline: sparse rational polynomials
//! ([`poly`]), circuits ([`circuit`]), the addressing-gadget transform
//! ([`gadget`]), inductive Boolean-ideal certificates and refutation
//! assembly ([`refute`]), exact and randomized verification ([`verify`]),
//! explicit instance families ([`instances`]) and the partition rank
//! measure ([`rank`]).

pub mod circuit;
pub mod corpus;
pub mod document;
pub mod exec;
pub mod field;
pub mod gadget;
pub mod instances;
pub mod poly;
pub mod rank;
pub mod rational;
pub mod refute;
pub mod var;
pub mod verify;

pub use circuit::{Circuit, CircuitBuilder, Gate, GateId, Metrics};
pub use poly::{Monomial, SparsePoly};
pub use rational::Rational;
pub use var::{Namespace, VarId};

/// Version tag written into every certificate document.
pub const BUILDER_VERSION: &str = concat!("ipskit/", env!("CARGO_PKG_VERSION"));
