//! Exact creative telescoping for bivariate proper hypergeometric terms.
//!
//! The crate computes telescopers and certificates, predicts order-degree
//! curves from the structural parameters of a term, scans the solvable
//! `(r, d)` region empirically, and selects cost-optimal telescoper orders,
//! for both the non-rational case (Zeilberger style) and the rational case
//! (Le style).

pub mod exactmath;
pub mod hyperterm;
pub mod curves;
pub mod ratcase;
pub mod telescope;
pub mod termio;

#[cfg(feature = "cli")]
pub mod cli;
