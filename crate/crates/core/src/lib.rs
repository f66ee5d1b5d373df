//! Exact signatures of two-bridge knots.
//!
//! A two-bridge knot `K(p/q)` is described by a continued fraction
//! `[c_1, ..., c_n] = c_1 - 1/(c_2 - 1/(... - 1/c_n))`. This crate builds the
//! Goeritz matrix of the standard 4-plat diagram of that continued fraction,
//! diagonalizes it in closed form, computes the Gordon–Litherland correction
//! term from an explicitly oriented template diagram, and cross-checks the
//! resulting signature against an independent remainder-counting formula.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).

pub mod contfrac;
pub mod diagram;
pub mod error;
pub mod goeritz;
pub mod numeric;
pub mod signature;

pub use contfrac::{ContinuedFraction, Convergents, EvenCfTrace, TraceRow};
pub use diagram::{MuValue, TemplateDiagram};
pub use error::{Error, Result};
pub use goeritz::{DiagonalForm, GoeritzMatrix, TransitionMatrix};
pub use numeric::{Int, Matrix, Rational};
pub use signature::{Method, SignatureReport, SliceVerdict, SumEntry, SumSpec};
