//! Finite-window operators: translations, projections, Hamiltonians, spectral calculus.

mod hamiltonian;
mod linalg;
mod spectral;
mod translations;
mod wprime;

pub use hamiltonian::{
    harper_bands, harper_bloch, hermitian_eigenvalues, iwatsuka_hamiltonian, rational_flux, BandStructure,
    BAND_TOUCH_TOL,
};
pub use linalg::{LatticeOperator, OpMatrix};
pub use spectral::{fermi_projection, switch_and_udelta, SpectralData, SwitchCalculus, SwitchFunction};
pub use translations::{flux_operator, hull_projection, magnetic_translation, position, translation, ProjectionKind};
pub use wprime::{strip_projection, w_prime, WPrimeVariant};
