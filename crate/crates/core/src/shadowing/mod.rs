//! Pseudo-orbits of linear hyperbolic toral automorphisms and their exact
//! shadows, and the pipeline that turns transitivity of the fattened map
//! into a dense true orbit.
//!
//! Torus points and defects live on the lattice `2^-52 Z^2`. An integer
//! matrix maps the lattice to itself, so pseudo-orbits are exact and a
//! defect-free pseudo-orbit is literally a true orbit.

mod certificate;
mod exact;
mod orbit;
mod toral;

use thiserror::Error;

use crate::svmap::GraphError;

pub use certificate::{
    dense_delta_orbit, dense_delta_orbit_from, theorem_a_certificate, CertificateReport,
};
pub use orbit::{make_pseudo_orbit, Perturbation, PseudoOrbit};
pub use toral::ToralAuto;
pub use exact::{corrections, shadow, shadow_strict, shadow_to, ShadowResult, Verification};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShadowError {
    #[error("matrix {matrix:?} is not a hyperbolic toral automorphism: {reason}")]
    NotHyperbolic { matrix: [[i64; 2]; 2], reason: String },
    #[error("defect {step} has norm {norm}, not below delta = {delta}")]
    DefectTooLarge { step: usize, norm: f64, delta: f64 },
    #[error("delta must be positive and finite, got {0}")]
    InvalidDelta(f64),
    #[error("pseudo-orbits need at least one step")]
    ZeroLength,
    #[error("expected {expected} defects, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exact verification of {steps} steps needs {bits} bits, above the {cap}-bit limit")]
    PrecisionLoss { steps: usize, bits: u64, cap: u64 },
    #[error("the fattened map is not transitive on its image")]
    NotTransitive,
    #[error("delta = {delta} exceeds the shadowing threshold {limit} for this epsilon")]
    ThresholdViolated { delta: f64, limit: f64 },
    #[error("grid cells of side {cell} are not finer than delta = {delta}")]
    GridTooCoarse { cell: f64, delta: f64 },
    #[error("shadow orbit misses {} net points", report.uncovered.len())]
    DensityNotAchieved { report: Box<CertificateReport> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ShadowError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::NotHyperbolic { .. } => "NotHyperbolic",
            Self::DefectTooLarge { .. } => "DefectTooLarge",
            Self::InvalidDelta(_) => "InvalidDelta",
            Self::ZeroLength => "ZeroLength",
            Self::LengthMismatch { .. } => "LengthMismatch",
            Self::PrecisionLoss { .. } => "PrecisionLoss",
            Self::NotTransitive => "NotTransitive",
            Self::ThresholdViolated { .. } => "ThresholdViolated",
            Self::GridTooCoarse { .. } => "GridTooCoarse",
            Self::DensityNotAchieved { .. } => "DensityNotAchieved",
            Self::Graph(e) => e.code(),
        }
    }
}

/// Fractional bits of the torus lattice.
pub(crate) const LATTICE_BITS: u32 = 52;
pub(crate) const LATTICE: i64 = 1 << LATTICE_BITS;
pub(crate) const LATTICE_F: f64 = LATTICE as f64;

/// Max-norm distance on the torus.
pub fn torus_distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    wrap_norm([a[0] - b[0], a[1] - b[1]])
}

/// Max norm of `v` reduced to `[-1/2, 1/2)^2`.
pub(crate) fn wrap_norm(v: [f64; 2]) -> f64 {
    v.iter()
        .map(|x| (x - x.round()).abs())
        .fold(0.0, f64::max)
}
