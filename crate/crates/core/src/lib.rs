//! Exact computations for small quantum groups at roots of unity.
//!
//! Everything is done over `Q[x]/Phi_N(x)` with exact rational arithmetic:
//! free algebras with their contravariant forms, Verma modules and the
//! coaction, finite dimensional module categories and conformal blocks,
//! Hochschild complexes and the cochain complexes of configuration
//! hyperplane arrangements.

pub mod arrangement;
pub mod catc;
pub mod cyclotomic;
pub mod freealg;
pub mod hochschild;
pub mod linalg;
pub mod parse;
pub mod rootdata;
pub mod verma;

pub use cyclotomic::{CycField, CycNum};
pub use linalg::{ChainComplex, CycMatrix};
pub use rootdata::{CartanDatum, EllData, RootVec, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Param(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cutoff exceeded: {0}")]
    Cutoff(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
