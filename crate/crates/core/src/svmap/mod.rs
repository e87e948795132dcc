//! The combinatorial set-valued map: a transition relation on cells that
//! outer-encloses an open set-valued map, in particular the ε-fattening of a
//! single-valued base map.

mod basemap;
mod graph;
mod io;

use thiserror::Error;

use crate::cellspace::CellSpaceError;

pub use basemap::{BaseMap, MapKind};
pub use graph::{explicit_graph, fatten, GraphSource, TransitionGraph};
pub use io::BINARY_MAGIC;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("row {row} is empty")]
    EmptyRow { row: usize },
    #[error("row {row} references cell {id}, which is out of range")]
    IdOutOfRange { row: usize, id: usize },
    #[error("the fattened image of cell {cell} misses the space")]
    EmptyImage { cell: usize },
    #[error("{rows} rows given for a space of {cells} cells")]
    RowCount { rows: usize, cells: usize },
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("invalid base map: {0}")]
    InvalidMap(String),
    #[error("map and space do not fit together: {0}")]
    IncompatibleSpace(String),
    #[error("malformed graph data: {0}")]
    Format(String),
    #[error(transparent)]
    Space(#[from] CellSpaceError),
}

impl GraphError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::EmptyRow { .. } => "EmptyRow",
            Self::IdOutOfRange { .. } => "IdOutOfRange",
            Self::EmptyImage { .. } => "EmptyImage",
            Self::RowCount { .. } => "RowCount",
            Self::InvalidEpsilon(_) => "InvalidEpsilon",
            Self::InvalidMap(_) => "InvalidMap",
            Self::IncompatibleSpace(_) => "IncompatibleSpace",
            Self::Format(_) => "Format",
            Self::Space(e) => e.code(),
        }
    }
}
