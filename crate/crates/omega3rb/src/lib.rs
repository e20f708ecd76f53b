//! Exact verification toolkit for weight-λ Rota-Baxter structures on the
//! integer-graded ternary algebra with basis {L_n : n ∈ Z} and bracket
//! [L_l, L_m, L_n] = D(l,m,n) · L_{l+m+n−1}.
//!
//! Everything is computed with exact rational arithmetic; no floating point
//! appears anywhere in a semantic path. The crate provides:
//!
//! - the structure-constant determinant `D` and the sparse [`algebra::Element`]
//!   type with the trilinear bracket and its fundamental-identity residual;
//! - homogeneous operators `R(L_m) = f(m+k)·L_{m+k}` with the graded
//!   weight-λ residual of a single bracket triple ([`operator`]);
//! - a forty-case catalog of coefficient-map families with exact parameter
//!   validation and literal/amended readings ([`catalog`]);
//! - derived-identity suites for the two classified branches
//!   ([`constraints`]);
//! - an exhaustive window-scale solver with pruning, parallel and
//!   deterministic, plus catalog matching ([`search`]);
//! - versioned JSON report types ([`report`]).

pub mod algebra;
pub mod catalog;
pub mod constraints;
pub mod operator;
pub mod report;
pub mod scalar;
pub mod search;
pub mod window;

/// Errors surfaced by parsing, validation, and search budgeting.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scalar literal was not an exact integer or `p/q` rational.
    #[error("invalid scalar literal {0:?}: expected an integer or p/q rational")]
    ScalarParse(String),
    /// A case id string did not name one of the forty catalog cases.
    #[error("unknown case id {0:?}")]
    UnknownCase(String),
    /// Parameters were missing, unknown, or malformed.
    #[error("invalid parameters: {0}")]
    Params(String),
    /// A case validator rejected the supplied parameters.
    #[error("{0}")]
    Validator(String),
    /// An enumeration request exceeded the configured budget.
    #[error("enumeration budget exceeded: {needed} tables needed, budget {budget}")]
    Budget { needed: u128, budget: u128 },
    /// A window or margin request was geometrically impossible.
    #[error("invalid window: {0}")]
    Window(String),
    /// An operator application referenced an index its coefficient table
    /// does not cover.
    #[error("coefficient undefined at index {index}")]
    Uncovered { index: i64 },
}
