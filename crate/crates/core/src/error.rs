use thiserror::Error;

/// Errors raised by the lattice laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sign of x_n = {x_approx:e} at n = {site:?} is below the working precision floor")]
    PrecisionExhausted { site: [i64; 2], x_approx: f64 },

    #[error("invalid slope: {0}")]
    InvalidSlope(String),

    #[error("invalid phase literal: {0}")]
    InvalidPhase(String),

    #[error("degenerate field: e^(i b+) = e^(i b-), the two half-planes cannot be told apart")]
    DegenerateField,

    #[error("flux {0} is not a rational multiple of 2*pi")]
    IrrationalFlux(String),

    #[error("operation requires a rational slope")]
    IrrationalSlope,

    #[error("perturbation is not Hermitian (deviation {0:e})")]
    NonHermitianPerturbation(f64),

    #[error("energy window [{lo}, {hi}] does not leave spectrum on both sides")]
    EmptyGap { lo: f64, hi: f64 },

    #[error("no interior sites at margin {0}")]
    EmptyInterior(usize),

    #[error("operator is not localized near the interface (edge-shell mass fraction {0:e})")]
    NotInterfaceLocalized(f64),

    #[error("trace slab needs tangential reach {needed:.2} but the window only offers {available:.2}")]
    SlabExceedsWindow { needed: f64, available: f64 },

    #[error("energy {mu} lies inside a band (gap closed)")]
    GapClosed { mu: f64 },

    #[error("operator is not a projection (||P^2 - P|| = {0:e})")]
    NotProjection(f64),

    #[error("no common spectral gap between the two bulk Hamiltonians; gaps(+) = {plus:?}, gaps(-) = {minus:?}")]
    NoCommonGap {
        plus: Vec<(f64, f64)>,
        minus: Vec<(f64, f64)>,
    },

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
