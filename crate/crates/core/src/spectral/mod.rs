//! Fields on periodic boxes standing in for `R^d`, their spectral norms and
//! tensor derivatives, and the harness that certifies the inequalities of
//! the calculus on concrete fields.
//!
//! Every certification compares two floating-point numbers computed on the
//! same discrete field; the continuum statements are approximated, not
//! proved, and the gap is monitored by refining the grid (see
//! [`GridSpec::refined`]). The exact polynomial path in [`exact`] has no
//! discretization at all.

pub mod exact;
mod field;
mod grid;
pub mod identities;
mod verify;

pub use field::{GridField, TensorField, MAX_TENSOR_SAMPLES};
pub use grid::{GridSpec, MAX_GRID_POINTS};
pub use verify::{
    adams_frazier_splits, field_norms, inequality_battery, standard_battery, verify_adams_frazier,
    verify_embedding, verify_faadibruno, verify_gagliardo, verify_interpolation, verify_tame, CheckRecord,
    FieldDerivatives, FieldSpec, TameCertification, BATTERY_AMPLITUDES, BATTERY_BESSEL_S, DEFAULT_TOLERANCE,
    FDB_SPECTRAL_TOLERANCE,
};
