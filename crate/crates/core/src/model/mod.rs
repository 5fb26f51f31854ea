//! Slopes, phases, the Iwatsuka field and lattice windows.

mod field;
mod phase;
mod slope;
mod spec;
mod window;

pub use field::{IwatsukaField, Side};
pub use phase::Phase;
pub use slope::{ExtendedFloat, QuadraticSurd, Slope, FRACTION_BITS};
pub use spec::{Decimal, FieldSpec, SlopeSpec};
pub use window::LatticeWindow;

/// A point of `Z^2`.
pub type Site = [i64; 2];
