//! Exact and numerical tools for the low-energy expansion of four-point
//! string amplitudes and their torus counterparts.
//!
//! The exact side works in ℚ[ζ₂, ζ₃, ζ₅, …]; the numerical side evaluates
//! the same quantities through independent nested sums and quadratures.

pub mod error;
pub mod exact;
pub mod numerics;

pub use error::{Error, Result};
pub mod closed;
pub mod config;
pub mod mzv;
pub mod open;
pub mod report;
pub mod sv;
pub mod suite;
pub mod torus;

mod memo;

/// Which of two independent constructions to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Route {
    /// From a generating series.
    Generating,
    /// From an explicit finite formula.
    Direct,
}
