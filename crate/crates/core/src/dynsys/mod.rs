//! Vector fields, Hamiltonian systems and birational changes of variables.
//!
//! The catalogue of named systems, Hamiltonians and charts lives in
//! [`catalog`]; the exact identity checks built on top of it live in
//! [`identities`].

pub mod catalog;
mod field;
mod holomorphy;
pub mod identities;
mod map;
mod recover;
#[cfg(test)]
mod tests;

use thiserror::Error;

use crate::symfield::{SymError, Var};

pub use field::{
    hamiltonian_field, is_polynomial, is_polynomial_field, total_derivative, HamiltonianSpec,
    PolynomialityReport, VectorField,
};
pub use holomorphy::{holomorphy, HolomorphyCheck, HOLOMORPHY_SYSTEMS};
pub use map::{invert_triangular, pushforward, BirationalMap};
pub use recover::{recover_hamiltonian, RecoveredHamiltonian};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("variable {0} appears twice")]
    DuplicateVariable(Var),
    #[error("field has no component for {0}")]
    MissingComponent(Var),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("map `{0}` has no inverse")]
    InverseUnavailable(String),
    #[error("map `{map}` is not triangular: cannot solve for {var}")]
    NonTriangular { map: String, var: Var },
    #[error("map `{map}` fails the round trip at {var}")]
    RoundTrip { map: String, var: Var },
    #[error("unknown catalogue entry `{0}`")]
    Unknown(String),
    #[error("{0}")]
    Recovery(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}
