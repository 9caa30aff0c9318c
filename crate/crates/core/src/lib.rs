//! Collective-spin squeezing dynamics in the symmetric (Dicke) subspace.
//!
//! The crate simulates one-axis twisting (OAT), two-axis countertwisting
//! (TACT), and two schemes that synthesize TACT out of OAT: a repeated
//! π/2-pulse sequence and a periodically modulated transverse drive. Both
//! schemes can be frozen at the optimal squeezing instant by rotating the
//! squeezed axis onto z, after which the residual OAT dynamics leaves the
//! squeezing essentially untouched.
//!
//! Time is measured in units of the coupling (`χ = 1` gives `τ = χt`); physical
//! units are only introduced by the command-line front end.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod cli_io;
pub mod diagnostics;
pub mod dicke;
mod error;
pub mod hamiltonians;
pub mod linalg;
pub mod propagator;
pub mod protocols;

pub use diagnostics::{
    find_optimum, husimi_q, m_distribution, mean_spin, scaling_fit, squeezing_report, RunRecord,
    SqueezingReport,
};
pub use dicke::{make_css, make_dicke_state, rotate, DickeState, RotationSpec, SpinKind, SpinOperator};
pub use error::{Result, SqueezeError};
pub use hamiltonians::{alpha0, build_effective, drive_value, DriveEnvelope, HamiltonianSpec};

pub use num_complex::Complex64 as C64;
