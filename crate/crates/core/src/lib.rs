//! Normality of holomorphic curves `f: C* → Pⁿ` decided from canonical zero data.
//!
//! A curve is given by `n + 1` coordinates in canonical product form, each
//! described by `log|A_j|`, an exponent `m_j` and a finite list of zeros in
//! cylinder coordinates `(log|z|, arg z)`. From this data the crate builds the
//! exact counting functions `t ↦ N(e^t, g_j)` and their upper envelope, and
//! evaluates the two conditions that together characterize normal curves:
//!
//! * a uniform bound on the tangent defect of the envelope ([`criteria::second_condition`]);
//! * control of the envelope by the non-clustered coordinates near every
//!   δ-cluster of zeros ([`criteria::third_condition`]).
//!
//! The [`rescale`] module simulates the family `z ↦ f(λz)` to corroborate the
//! analytic verdicts, and [`generators`] builds the standard examples.

pub mod cli;
pub mod criteria;
pub mod curve;
pub mod error;
pub mod fmt;
pub mod generators;
pub mod plc;
pub mod rescale;

pub use crate::curve::{CanonicalCoordinate, Curve, LogPoint, ProjectivePoint, Zero};
pub use crate::error::{Error, Result};
pub use crate::plc::{DefectWitness, LinearFn, PLConvex, Side, Window};
