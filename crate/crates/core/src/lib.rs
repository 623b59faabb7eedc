//! Harmonic analysis, dynamical cohomology and K-theoretic index pairings on
//! odometer groups `Z_S`, computed at finite truncation levels.
//!
//! Everything that is rational is computed exactly (`BigRational`); Fourier
//! transforms and norms run in binary64 with fixed summation order.

pub mod cohomology;
pub mod dual;
pub mod error;
pub mod formats;
pub mod fredholm;
pub mod harmonic;
pub mod ktheory;
pub mod length;
pub mod linalg;
pub mod odometer;
pub mod sample;
pub mod scalar;
pub mod supernatural;

pub use dual::{make_root, DualElement};
pub use error::{Error, Result};
pub use harmonic::{FourierCoeffs, LevelFunction, CHARACTER_TOLERANCE, DEFAULT_TOLERANCE};
pub use ktheory::{K0Class, K0Coeffs, KHomomorphism};
pub use length::{LengthSpec, LengthTable};
pub use odometer::{DigitVector, OdometerPoint};
pub use scalar::{Complex64, ExactComplex, Rational, Scalar};
pub use supernatural::{Scale, SupernaturalNumber};
