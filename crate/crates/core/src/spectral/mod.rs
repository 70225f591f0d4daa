//! Point spectrum of weighted backward shifts.
//!
//! For `T` with weights `w_n`, every `ω` in the disk `|ω| < liminf (w_1⋯w_n)^{1/n}`
//! is an eigenvalue with eigenvector `k_ω = Σ ωⁿ/(w_1⋯w_n) e_n`, and the
//! ω-derivatives of this field span the generalized kernels. The mixing
//! witness and the periodic approximant below are built from these vectors.
//!
//! Surjectivity of `T - ω` on the disk is not checked numerically; no finite
//! truncation can observe it.

mod approx;
mod eigen;
mod mixing;
mod periodic;
mod radius;

pub use approx::{default_grid, eigen_approximate, EigenApproximation};
pub use eigen::{eigen_residual, eigenvector, gen_eigenvector, kernel_residual, EigenVector};
pub use mixing::{mixing_point, mixing_witness, EigenPart, MixingCheck, MixingWitness, MIXING_CHECK_SPAN};
pub use periodic::{periodic_approximant, PeriodicApproximant, RootOfUnity};
pub use radius::{eigen_disk_radius, EigenDisk, DEFAULT_PROBE_LEN};

pub(crate) use eigen::field_coords;
