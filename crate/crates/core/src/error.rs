use thiserror::Error;

use crate::algebra::Var;

/// Errors raised anywhere in the engine.
///
/// The CLI maps [`Error::ScaleExceeded`] to exit code 2 and everything else
/// that is not a verification mismatch to exit code 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent {exp} for non-Laurent variable {var}")]
    NegativeExponent { var: Var, exp: i32 },
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series constant term is not 1")]
    BadConstantTerm,
    #[error("truncated variable {0} carries a negative exponent")]
    NegativeTruncatedExponent(Var),
    #[error("cannot substitute a non-monomial for {0} in a term with negative exponent")]
    NotInvertible(Var),
    #[error("index ({0}, {1}) outside 1..={2}")]
    IndexOutOfRange(u16, u16, u16),
    #[error("{what} = {got} exceeds the desk-scale limit {limit} (set WICKENUM_SCALE_OVERRIDE to lift it)")]
    ScaleExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("graph is not connected")]
    NotConnected,
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("invalid rotation system: {0}")]
    InvalidFatGraph(String),
    #[error("odd Euler defect {0}: rotation system is inconsistent")]
    OddEulerDefect(i64),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// True when `WICKENUM_SCALE_OVERRIDE` is set to anything but `0` or empty.
pub fn scale_override() -> bool {
    std::env::var("WICKENUM_SCALE_OVERRIDE")
        .map(|v| !v.is_empty() && v != "0")
        .unwrap_or(false)
}

/// Fails with [`Error::ScaleExceeded`] unless `got <= limit` or the override
/// is active.
pub fn check_scale(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit && !scale_override() {
        return Err(Error::ScaleExceeded { what, limit, got });
    }
    Ok(())
}
