//! Finite graded rings and m-nil clean decision procedures.
//!
//! Rings are finite and unital with elements numbered `0..size` (0 is the
//! additive identity). A [`Grading`] splits a ring into homogeneous
//! components indexed by a finite group or by the integers.

pub mod constructions;
pub mod error;
pub mod grading;
pub mod group;
pub mod limits;
pub mod nilclean;
pub mod radix;
pub mod ring;

pub use error::{Error, GradingViolation, Result};
pub use grading::{DegreeOf, Grading, HomogeneousIdeal, Sidedness};
pub use group::{Degree, FiniteGroup, GradingGroup};
pub use limits::Limits;
pub use ring::{Elem, ElementClass, FiniteRing, Quotient, Span, ZERO};
