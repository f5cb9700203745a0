//! Certified complex root finding over exact decimal arithmetic.
//!
//! Everything in this crate computes with integers underneath: scalars are
//! exact decimals (integer mantissa times a power of ten), every rounding
//! step is explicit, and every published bound is certified — an answer at
//! accuracy `m` is guaranteed to lie within `10^-m` of the true value.
//!
//! The crate is organized as:
//!
//! - [`decimal`]: the exact scalar ring ([`DecimalReal`], [`DecimalComplex`])
//!   plus accuracy/rounding primitives and certified modulus brackets;
//! - [`dichotomy`]: certified real square and higher roots by oracle
//!   bisection;
//! - [`polyroot`]: certified root clusters, exclusion radii, conditioning
//!   budgets and discriminant-safe perturbation for dense complex
//!   polynomials;
//! - [`seriesroot`]: certified zero counting and divisor extraction for
//!   analytic functions given by coefficient oracles;
//! - [`reconstruct`]: exact rational and modular reconstruction of the
//!   certified approximations back to symbolic form.

pub mod decimal;
pub mod dichotomy;
pub mod polyroot;
pub mod reconstruct;
pub mod seriesroot;

mod interval;

pub use decimal::{modulus_bounds, Accuracy, Config, DecimalComplex, DecimalReal};
