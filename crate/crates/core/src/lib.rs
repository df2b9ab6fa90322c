//! Second Hankel determinant of logarithmic coefficients for the lune-starlike
//! and lune-convex classes.
//!
//! The crate rebuilds each constructive step behind the sharp bounds
//! `|γ₁γ₃ − γ₂²| ≤ 1/16` (starlike) and `≤ 23/3264` (convex) and checks them
//! numerically against independent routes:
//!
//! * [`series`]: truncated complex power series (the carrier for every function).
//! * [`caratheodory`]: the `(τ₁, τ₂, τ₃)` parameterization of `c₁, c₂, c₃`.
//! * [`lune`]: the target `q(z) = z + √(1 + z²)`, coefficient maps and extremal functions.
//! * [`log_hankel`]: logarithmic coefficients and `H₂,₁(F_f/2)` in three coordinate systems.
//! * [`bound`]: the piecewise maximum `Y(A, B, C)`, bound curves and the global search.
//! * [`verify`]: the certification suite behind the `verify` subcommand.

pub mod bound;
pub mod caratheodory;
pub mod cli;
mod error;
pub mod log_hankel;
pub mod lune;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::TruncatedSeries;
