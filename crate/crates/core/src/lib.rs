//! Finite thin concurrent games.
//!
//! Games and strategies are finite event structures with polarity and
//! symmetry. Strategies compose by interaction and hiding, and collapse to
//! matrices over the completed naturals by counting +-covered witnesses up
//! to polarized symmetry against canonical representatives.

pub mod collapse;
pub mod esp_core;
pub mod fixtures;
pub mod game_constructions;
pub mod generate;
pub mod strategies;
pub mod symmetry;

pub use collapse::{Atlas, Weight, WeightedRelation};
pub use esp_core::{EsDecl, EventId, EventSet, EventStructure, Polarity};
pub use strategies::Strategy;
pub use symmetry::{ConfigIso, Flavor, SymmetrySpec, Tcg};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("too many events: {0} (at most 128)")]
    TooManyEvents(usize),
    #[error("invalid event structure: {0}")]
    InvalidStructure(String),
    #[error("enumeration cap of {0} exceeded")]
    SizeLimitExceeded(usize),
    #[error("game is not negative")]
    NotNegative,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("factorization is not unique: {0}")]
    NonUniqueFactorization(String),
    #[error("game is not representable: {0}")]
    NotRepresentable(String),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("games do not match: {0}")]
    GameMismatch(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("solution not unique: {0}")]
    NonUnique(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bijection failure: {0}")]
    BijectionFailure(String),
    #[error("not a configuration: {0}")]
    NotAConfiguration(String),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
