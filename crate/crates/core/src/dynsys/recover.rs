//! Recovery of a Hamiltonian from holomorphy conditions.

use super::{BirationalMap, DynError};
use crate::symfield::RatFunc;

#[derive(Clone, Debug)]
pub struct RecoveredHamiltonian {
    pub particular: RatFunc,
    pub free: Vec<RatFunc>,
}

pub fn recover_hamiltonian(_charts: &[BirationalMap]) -> Result<RecoveredHamiltonian, DynError> {
    Err(DynError::Recovery("not yet implemented".into()))
}
