//! Exact arithmetic: rationals, Laurent polynomials and truncated series.

mod json;
mod monomial;
mod poly;
mod series;

pub use monomial::Monomial;
pub use poly::ExactPoly;
pub use series::{Truncation, TruncatedSeries, VarGroup};

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num::BigRational;

/// Builds `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Config(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formal variables, in registry order.
///
/// The derived `Ord` is the registry order used by the graded-lex term order:
/// `N < y < z < x < z_i < M_ij`. Matrix entries are stored by index pair so
/// hot loops never touch strings.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    N,
    Y,
    Z,
    X,
    /// The indexed coupling `z_i` of the map generating function.
    Zi(u16),
    /// The matrix entry `M_ij`, 1-based.
    Entry(u16, u16),
}

impl Var {
    /// Only `N` and `y` may carry negative exponents.
    pub fn is_laurent(self) -> bool {
        matches!(self, Var::N | Var::Y)
    }

    pub fn is_entry(self) -> bool {
        matches!(self, Var::Entry(..))
    }

    pub fn parse(name: &str) -> Result<Var> {
        let unknown = || Error::UnknownVariable(name.to_string());
        match name {
            "N" => return Ok(Var::N),
            "y" => return Ok(Var::Y),
            "z" => return Ok(Var::Z),
            "x" => return Ok(Var::X),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("M_") {
            let (i, j) = rest.split_once('_').ok_or_else(unknown)?;
            let i: u16 = i.parse().map_err(|_| unknown())?;
            let j: u16 = j.parse().map_err(|_| unknown())?;
            if i == 0 || j == 0 {
                return Err(unknown());
            }
            return Ok(Var::Entry(i, j));
        }
        if let Some(rest) = name.strip_prefix('z') {
            let i: u16 = rest.parse().map_err(|_| unknown())?;
            if i == 0 {
                return Err(unknown());
            }
            return Ok(Var::Zi(i));
        }
        Err(unknown())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::N => f.write_str("N"),
            Var::Y => f.write_str("y"),
            Var::Z => f.write_str("z"),
            Var::X => f.write_str("x"),
            Var::Zi(i) => write!(f, "z{i}"),
            Var::Entry(i, j) => write!(f, "M_{i}_{j}"),
        }
    }
}

/// Falling factorial `N(N-1)...(N-k+1)` as a polynomial in `N`.
pub fn falling_factorial(k: usize) -> ExactPoly {
    let mut acc = ExactPoly::one();
    for i in 0..k {
        acc = &acc * &(ExactPoly::var(Var::N) - ExactPoly::constant(int(i as i64)));
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}
