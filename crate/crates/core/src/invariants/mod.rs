//! Traces, derivations, Chern and winding numbers, and the bulk-interface verifier.

mod bic;
mod chern;
mod trace;
mod transport;

pub use bic::{
    calibrate_orientation, common_gaps, verify_bic, BicConfigEcho, BicSpec, InvariantReport, Residuals, WindowMeta,
    BIC_TOLERANCE, CURRENT_TOLERANCE, ORIENTATION_SIGN,
};
pub use chern::{chern_momentum, chern_realspace, GAP_MARGIN};
pub use trace::{
    derivation, diag_of_adjoint_product, diag_of_product, tangential_reach, trace_bulk, trace_interface, TraceSpec,
    TraceWeights, DERIVATION_SIGN,
};
pub use transport::{interface_current, winding, CurrentReport};
