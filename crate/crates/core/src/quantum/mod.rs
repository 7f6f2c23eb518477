//! Bipartite states on C^n ⊗ C^m with uniform margins.

mod analysis;
mod construct;
mod eigen;
mod matrix;
mod state;
mod weyl;

pub use analysis::{
    extremality_check, numerical_rank, rank_bounds, rank_of_spectrum, schur_check, spectrum, verify_state,
    ExtremalityReport, RankBounds, SchurReport, StateReport,
};
pub use construct::{construct, construct_divisible, construct_full, weight_for_rank, Mode, WeightMatrix};
pub use eigen::{hermitian_eigen, real_singular_values, HermitianEigen};
pub use matrix::ComplexMatrix;
pub use state::{partial_trace_a, partial_trace_b, DensityOperator, StateJson};
pub use weyl::{psi_basis, psi_state, root_of_unity, weyl_x, weyl_z};

pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const MARGIN_TOL: f64 = 1e-9;
pub const RANK_TOL: f64 = 1e-9;
pub const NULLSPACE_TOL: f64 = 1e-8;
pub const EIGEN_GAP_TOL: f64 = 1e-7;
pub const MAJORIZATION_SLACK: f64 = 1e-9;
pub const SCHUR_EQUALITY_TOL: f64 = 1e-10;
pub(crate) const JACOBI_OFF_TOL: f64 = 1e-12;
pub(crate) const MAX_SWEEPS: usize = 100;

/// Numerical thresholds used when validating and analysing states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
    pub margin: f64,
    pub rank: f64,
    pub nullspace: f64,
    pub eigen_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN_TOL,
            trace: TRACE_TOL,
            psd: PSD_TOL,
            margin: MARGIN_TOL,
            rank: RANK_TOL,
            nullspace: NULLSPACE_TOL,
            eigen_gap: EIGEN_GAP_TOL,
        }
    }
}
