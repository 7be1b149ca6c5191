//! Exact construction and analysis of binomial interpolated triangles.
//!
//! A triangle `BT(a0, a1, alpha, beta; u, v)` has a left leg following the
//! binary recurrence `a_n = alpha a_{n-1} + beta a_{n-2}` and interior entries
//! `a_{n,k} = u a_{n,k-1} + v a_{n-1,k-1}`. Everything here is computed over
//! exact rationals, with `Q(sqrt(alpha^2 + 4 beta))` used by the closed forms.

pub mod classify;
pub mod error;
pub mod explicit;
pub mod numerics;
pub mod oeis;
pub mod sequences;
pub mod transform;
pub mod triangle;

pub use error::{Error, Result};
pub use numerics::{rat, ArithOp, QuadraticNumber, Rational};
pub use sequences::{DerivedSequence, LinearRecurrence, SequenceKind, Verdict};
pub use transform::Sequence;
pub use triangle::{DerivedConstants, Triangle, TriangleSpec};
