//! Numerical laboratory for the dynamics of critical quasicircle maps.
//!
//! The crate is organized around five subsystems:
//!
//! * [`rotnum`] — continued fractions, rotation numbers, the prime
//!   renormalization `r_prm` and closest-return combinatorics,
//! * [`sector`] — the translation-pair calculus: prime renormalization of
//!   commuting translations, anti-renormalization matrices, power triples
//!   and cascades of translations,
//! * [`ratmap`] — the explicit rational family `F_c` with critical points
//!   at 0, ∞ and 1, rotation-number measurement and parameter solvers,
//! * [`cprenorm`] — commuting-pair renormalization sampled along orbits,
//!   scaling ratios and convergence diagnostics,
//! * [`render`] — escape-time rendering of dynamical and parameter planes,
//!   external-ray tracing and a zoom self-similarity probe.

pub mod cprenorm;
pub(crate) mod poly;
pub mod ratmap;
pub mod render;
pub mod rotnum;
pub mod sector;
pub mod table;

pub use num_complex::Complex64;

/// Golden mean `(√5 − 1)/2`, continued fraction `[0; 1, 1, 1, …]`.
pub const GOLDEN_MEAN: f64 = 0.618033988749894848;

/// Silver-type constant `√2 − 1`, continued fraction `[0; 2, 2, 2, …]`.
pub const SILVER_MEAN: f64 = 0.414213562373095049;
