use thiserror::Error;

use crate::roots::RootReason;

/// Errors produced by the p-adic and Witt vector operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^64")]
    NotPrime(u64),
    #[error("precision must be at least 1 digit")]
    ZeroPrecision,
    #[error("not a unit: residue is divisible by p = {p}")]
    NotAUnit { p: u64 },
    #[error("invalid degree {degree}: p = {p} divides it")]
    InvalidDegree { p: u64, degree: u64 },
    #[error("inexact division by a power of p (internal arithmetic error)")]
    ExactDivisionFailure,
    #[error("{value} is divisible by p = {p}")]
    NotCoprime { p: u64, value: String },
    #[error("length {requested} exceeds the ghost-sequence limit {limit}")]
    LengthLimit { requested: usize, limit: usize },
    #[error("operands live in different rings (p = {left} vs p = {right})")]
    MismatchedRing { left: u64, right: u64 },
    #[error("outside the domain: {0}")]
    DomainError(String),
    #[error("input is zero")]
    ZeroInput,
    #[error("root does not exist: {0}")]
    RootCondition(RootReason),
    #[error("precision too low: need at least {needed} digits, have {have}")]
    PrecisionTooLow { needed: u32, have: u32 },
    #[error("operation requires p = {expected}, got p = {got}")]
    WrongPrime { expected: u64, got: u64 },
    #[error("invalid digit {digit} for p = {p}")]
    InvalidDigit { p: u64, digit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
