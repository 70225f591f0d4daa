//! The scrambled-set construction.
//!
//! Stage `k` picks a norm-unimodal witness `x_k` whose orbit sits above 1 on
//! `[N'_k, N_k]` and vanishes from `M_k` on. Summing the witnesses selected by a
//! binary sequence gives `f: {0,1}^ℕ → X`; two sequences that differ and agree
//! infinitely often map to a distributionally chaotic pair.
//!
//! Norms reach far outside the `f64` range (`‖x_6‖ = 2^-9408` for `w ≡ 2`),
//! so every orbit quantity here is an [`ExtReal`](crate::ExtReal).

mod construction;
mod pair;
mod stats;
mod symbols;

pub use construction::{
    build_construction, check_invariants, least_n, least_n_prime, stage_norm, EpsRule, InvariantReport,
    ScrambleConstruction, Stage, StageChecks, DEFAULT_N1,
};
pub use pair::{verify_dc_pair, BlockCheck, BlockFBound, PairReport, SEPARATION_TAU};
pub use stats::{distance_series, f_bounds, f_n, f_n_inclusive, CloseCounts, DistributionalStats, FSample};
pub use symbols::{pair_family, signed_combination, symbol_map_f, theta, SymbolSequence};
