//! Exact computational algebra over finite fields F_{p^a}: construction of
//! fields and subfield embeddings, univariate polynomials, integer partitions
//! with dominance order, dense matrices with cycle-type / class-type
//! extraction, decision procedures for commuting similarity classes and class
//! types, commuting nilpotent classes, and centralizer determinant sets.
//!
//! The crate is `no_std` + `alloc`: every operation is a pure function over
//! immutable values and all arithmetic is exact.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cent;
pub mod gf;
pub mod matrix;
pub mod nilcommute;
pub mod partition;
pub mod poly;
pub mod typealg;

use alloc::string::String;
use core::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// p is not prime, a < 1, or the field would exceed the size cap (2^20).
    InvalidField,
    /// Inversion of zero, or division by a zero polynomial.
    DivisionByZero,
    /// Requested an embedding between fields that are not subfield-related.
    NotASubfield,
    /// Polynomial operation requiring positive degree got a constant.
    InvalidDegree,
    /// No irreducible of degree >= 2 has constant term 0.
    InvalidConstantTerm,
    /// CRT moduli are not pairwise coprime.
    NotCoprime,
    /// Partition is not t-divisible.
    NotDivisible,
    /// Operands must have equal size / dimension.
    SizeMismatch,
    /// An operation required at least one nonempty input.
    EmptyInput,
    /// Matrix dimensions or fields are incompatible.
    ShapeMismatch,
    /// The matrix is not nilpotent.
    NotNilpotent,
    /// The polynomial is not irreducible.
    NotIrreducible,
    /// The matrices are not similar.
    NotSimilar,
    /// The class type is not representable over the field.
    NotRepresentable,
    /// Class types of source and target disagree.
    TypeMismatch,
    /// The two matrices do not commute.
    NotCommuting,
    /// A certified negative: the requested witness provably does not exist.
    NoWitnessExists,
    /// An enumeration would exceed the configured budget.
    BudgetExceeded,
    /// Malformed text input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidField => write!(f, "invalid field parameters"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotASubfield => write!(f, "not a subfield"),
            Error::InvalidDegree => write!(f, "invalid polynomial degree"),
            Error::InvalidConstantTerm => write!(f, "constant term must be nonzero"),
            Error::NotCoprime => write!(f, "moduli are not pairwise coprime"),
            Error::NotDivisible => write!(f, "partition is not divisible"),
            Error::SizeMismatch => write!(f, "size mismatch"),
            Error::EmptyInput => write!(f, "empty input"),
            Error::ShapeMismatch => write!(f, "matrix shape or field mismatch"),
            Error::NotNilpotent => write!(f, "matrix is not nilpotent"),
            Error::NotIrreducible => write!(f, "polynomial is not irreducible"),
            Error::NotSimilar => write!(f, "matrices are not similar"),
            Error::NotRepresentable => write!(f, "type is not representable over the field"),
            Error::TypeMismatch => write!(f, "class types do not match"),
            Error::NotCommuting => write!(f, "matrices do not commute"),
            Error::NoWitnessExists => write!(f, "no witness exists (certified)"),
            Error::BudgetExceeded => write!(f, "enumeration budget exceeded"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
