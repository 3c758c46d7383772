use crate::complex::ComplexError;
use crate::decomposition::DecompositionError;
use crate::group::GroupError;
use crate::homology::HomologyError;
use crate::maxsets::MaxSetError;
use crate::structure::StructureError;

/// Crate-wide error, one variant per module.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    MaxSet(#[from] MaxSetError),
}

impl Error {
    /// True for errors caused by a configured resource cap rather than by the
    /// input being mathematically invalid.
    pub fn is_cap(&self) -> bool {
        match self {
            Error::Group(e) => e.is_cap(),
            Error::Structure(StructureError::Group(e)) => e.is_cap(),
            Error::Structure(_) => false,
            Error::Complex(e) => e.is_cap(),
            Error::Homology(e) => e.is_cap(),
            Error::Decomposition(e) => e.is_cap(),
            Error::MaxSet(e) => e.is_cap(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
