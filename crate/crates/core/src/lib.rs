//! Constructive chaos certificates for weighted backward shifts.
//!
//! The crate works on finitely supported complex sequences (a desk-scale
//! stand-in for ℓ²) and weighted backward shifts acting on them. It can
//!
//! * locate the eigen disk and build eigenvectors and generalized eigenvectors,
//! * certify strong mixing and produce periodic points from eigenvectors at roots of unity,
//! * generate and check norm-unimodal witnesses,
//! * run the full scrambled-set construction and verify distributionally chaotic pairs.
//!
//! Every quantity that can leave the `f64` range is carried as an [`ExtReal`].

pub mod cli;
pub mod error;
pub mod ext;
pub mod scramble;

pub mod seqspace;
pub mod shiftops;
pub mod spectral;
pub mod unimodal;

pub use error::{Error, Result};
pub use ext::{ExtComplex, ExtReal};
pub use seqspace::TruncatedVector;
pub use shiftops::{LinearOperator, ShiftOperator, WeightForm, WeightSequence};
