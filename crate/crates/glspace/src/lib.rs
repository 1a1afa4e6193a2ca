//! A numerical laboratory for norm calculus on the unit-interval
//! probability space: Lebesgue-Riesz, Grand Lebesgue, Orlicz (Luxemburg)
//! and Lorentz norms with certified error or certified divergence, plus a
//! disjoint-block process whose supremum has markedly heavier tails than
//! any of its individual values.
//!
//! The block process places a copy of a base profile f on each interval
//! [a_{n+1}, a_n), scaled to height n^β; each block sits in L4 with a
//! uniform bound, yet the Lp norm of the supremum blows up like
//! (4-p)^(-1/4) as p → 4, so the supremum escapes the Grand Lebesgue space
//! generated by (4-p)^(-1/8) even though that space is strictly weaker
//! than the one containing every single block.
//!
//! Organization:
//! - [`measure`]: measurable functions on (0, 1), structure-aware adaptive
//!   integration, singularity substitution x = e^(-t).
//! - [`psi`]: ψ-functions and Young functions, natural functions, and the
//!   two "significantly weaker" embedding relations.
//! - [`norms`]: the four norms, the distribution function and the
//!   decreasing rearrangement.
//! - [`process`]: the block construction, its closed-form norms, blow-up
//!   series and divergence certificate.
//! - [`montecarlo`]: reproducible sampling diagnostics (tails, moments,
//!   Borel–Cantelli summability, union bounds).
//! - [`cli`]: the `glspace` binary's commands, emitting deterministic CSV.
//!
//! Every runnable capability has a corresponding file under `examples/`.

// Comparisons like !(x > 0.0) are deliberate: they reject NaN parameters,
// which x <= 0.0 would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod measure;
pub mod montecarlo;
pub mod norms;
pub mod process;
pub mod psi;
pub mod series;

mod quad;

pub use measure::{
    evaluate_block_union, integrate, integrate_transformed, Interval, MeasureError, Quadrature,
    QuadratureConfig, UnitIntervalFunction,
};
pub use norms::{
    decreasing_rearrangement, distribution_function, gls_norm, lorentz_norm, lp_norm,
    luxemburg_norm, LorentzWeight, NormError, NormMethod, NormReport, NormValue,
};
pub use process::{
    build_spec, default_certificate_grid, BlockProcess, DivergenceCertificate, MetricSpace,
    ProcessError, ProcessSpec, SeriesValue, TPoint,
};
pub use psi::{
    endpoint_gap_grid, gls_weaker, make_natural_psi, orlicz_weaker, PsiError, PsiFunction,
    RelationConfig, Verdict, YoungFunction,
};
