use thiserror::Error;

use crate::group::Degree;
use crate::ring::Elem;

/// A violated grading axiom together with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingViolation {
    #[error("degree {0} is not an element of the grading group")]
    DegreeOutsideGroup(Degree),
    #[error("component {degree} is not an additive subgroup ({x} + {y} escapes it)")]
    NotSubgroup { degree: Degree, x: Elem, y: Elem },
    #[error("components are not independent: element {x} has two decompositions")]
    NotIndependent { x: Elem },
    #[error("components do not span the ring: element {x} is not a sum of homogeneous parts")]
    NotSpanning { x: Elem },
    #[error("component sizes multiply to {product}, ring has {size} elements")]
    SizeMismatch { product: u128, size: usize },
    #[error("{x} (degree {gx}) * {y} (degree {gy}) = {product} is not in component {expected}")]
    Multiplicativity {
        x: Elem,
        gx: Degree,
        y: Elem,
        gy: Degree,
        product: Elem,
        expected: Degree,
    },
    #[error("the identity is not homogeneous of the identity degree")]
    IdentityNotNeutral,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("group axiom `{law}` fails at ({a}, {b}, {c})")]
    GroupAxiom {
        law: &'static str,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("ring axiom `{law}` fails at ({a}, {b}, {c})")]
    RingAxiom {
        law: &'static str,
        a: Elem,
        b: Elem,
        c: Elem,
    },
    #[error("not closed: {law} of {x} and {y} leaves the set")]
    NotClosed { law: &'static str, x: Elem, y: Elem },
    #[error("element {x} is not homogeneous")]
    NotHomogeneous { x: Elem },
    #[error("ideal is not homogeneous: {x} has a component outside it")]
    IdealNotHomogeneous { x: Elem },
    #[error("invalid grading: {0}")]
    Grading(#[from] GradingViolation),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("resource limit: {what} exceeds {limit} (reached {reached})")]
    Resource {
        what: &'static str,
        limit: u128,
        reached: u128,
    },
}

impl Error {
    pub fn resource(what: &'static str, limit: impl Into<u128>, reached: impl Into<u128>) -> Self {
        Error::Resource {
            what,
            limit: limit.into(),
            reached: reached.into(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
