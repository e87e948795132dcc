//! Combinatorial analysis of open set-valued dynamical systems.
//!
//! A compact space is cut into cells ([`cellspace`]), a set-valued map is
//! enclosed by a transition relation on cells ([`svmap`]), and the relation
//! is analysed for recurrence ([`recurrence`]), its decomposition into
//! cyclically permuted mixing pieces ([`spectral`]), and orbit growth
//! ([`entropy`]). [`shadowing`] computes exact shadows of pseudo-orbits of
//! hyperbolic toral automorphisms and uses them to certify transitivity.

pub mod cellset;
pub mod cellspace;
pub mod entropy;
pub mod oracle;
pub mod recurrence;
pub mod shadowing;
pub mod spectral;
pub mod svmap;

pub use cellset::CellSet;
pub use cellspace::{CellSpace, CellSpaceError, SpaceId, SpaceKind};
pub use svmap::{explicit_graph, fatten, BaseMap, GraphError, GraphSource, MapKind, TransitionGraph};

/// Version of the JSON graph and space schemas.
pub const SCHEMA_VERSION: u32 = 1;

/// Any error raised by the library.
#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Space(#[from] CellSpaceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Recurrence(#[from] recurrence::RecurrenceError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
    #[error(transparent)]
    Entropy(#[from] entropy::EntropyError),
    #[error(transparent)]
    Shadow(#[from] shadowing::ShadowError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}

impl Error {
    /// Stable name of the error condition.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Space(e) => e.code(),
            Error::Graph(e) => e.code(),
            Error::Recurrence(e) => e.code(),
            Error::Spectral(e) => e.code(),
            Error::Entropy(e) => e.code(),
            Error::Shadow(e) => e.code(),
            Error::Oracle(e) => e.code(),
        }
    }
}
