//! Closed-form bound states of the generalized Morse potential.
//!
//! The Schrödinger equation for `V(x) = V1 e^{-αx} + V2 e^{-2αx}` is reduced to the
//! confluent hypergeometric equation `ξΦ'' + (b - ξ)Φ' - aΦ = 0`. Its Laplace transform
//! is a first-order equation whose polynomial solutions are finite Laurent principal
//! parts around `s = 0`; inverting them termwise gives the generalized Laguerre
//! polynomials. Every analytic result is cross-checked against independent numerics
//! (a Numerov eigensolver and Gauss quadrature).
//!
//! Module map:
//!
//! * [`special`]: generalized Laguerre polynomials, gamma ratios, closed-form integrals.
//! * [`laplace`]: the transform-space engine (Laurent series, ODE residual, inversion).
//! * [`morse`]: the physics layer (quantization, energies, normalized eigenfunctions).
//! * [`numerics`]: oracles (matrix Numerov eigensolver, quadrature, convergence study).
//! * [`verify`]: the end-to-end invariant suite surfaced by the CLI.

pub mod error;
pub mod laplace;
pub mod morse;
pub mod numerics;
pub mod poly;
pub mod scalar;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use laplace::{CHTParams, TransformSeries};
pub use morse::{BoundState, MorseParams};
pub use poly::{LaurentPoly, Polynomial};
pub use scalar::{parse_rational, rational_to_string, Rational, Scalar};
pub use special::LaguerrePoly;
