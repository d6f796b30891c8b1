//! Exact computations with complete (integrally closed) ideals of finite
//! colength, in two finitely representable models:
//!
//! * anti-nef cycles on dual graphs of rational surface singularities
//!   ([`graph`], [`blowup`], [`adjacency`]);
//! * monomial ideals in a regular local ring ([`monomial`]).
//!
//! [`fiber_cone`] evaluates the point criterion for adjacent complete ideals
//! on a presentation of the fiber cone, and [`oracle`] searches for
//! integral-dependence certificates over small prime fields.

pub mod adjacency;
pub mod blowup;
pub mod dot;
pub mod fiber_cone;
pub mod field;
pub mod graph;
pub mod monomial;
pub mod oracle;

pub use adjacency::{adjacent_below, chain_graph, AdjacencyError, AdjacencyReport, GraphChain};
pub use blowup::{adjacent_cycle_via_blowup, blow_up, BlowUp, BlowUpError, BlowUpSpec};
pub use graph::{validate_graph, Cycle, DualGraph, GraphError, QCycle, RawGraph};

pub use monomial::{MonomialError, MonomialIdeal};
pub use oracle::{classify, Bounds, Certificate, OracleError, Polynomial};
