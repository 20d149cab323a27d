//! Cayley graphs of finite right groups S = G × R_k: construction, planarity
//! certificates in both directions, minor machinery, and exhaustive
//! generating-set search at desk scale.

pub mod algebra;
pub mod cayley;
pub mod characterize;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod minors;
pub mod planarity;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
