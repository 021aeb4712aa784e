use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Zero};

use super::{fmt_rational, is_negative, Monomial, Rational, Var};
use crate::error::{Error, Result};

/// Multivariate Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in graded-lex order and zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct ExactPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of a monomial given by variable names.
    pub fn coefficient_named(&self, exps: &[(&str, i32)]) -> Result<Rational> {
        let pairs = exps
            .iter()
            .map(|&(name, e)| Var::parse(name).map(|v| (v, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.coefficient(&Monomial::new(pairs)?))
    }

    /// The polynomial multiplying `∏ v^e` for the listed variables: all terms
    /// whose exponents on those variables match exactly, with the variables
    /// removed.
    pub fn coeff_of(&self, fixed: &[(Var, i32)]) -> ExactPoly {
        let mut out = ExactPoly::zero();
        'terms: for (m, c) in &self.terms {
            let mut rest = m.clone();
            for &(v, e) in fixed {
                let (got, r) = rest.take(v);
                if got != e {
                    continue 'terms;
                }
                rest = r;
            }
            out.add_term(rest, c.clone());
        }
        out
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &Rational) -> ExactPoly {
        if c.is_zero() {
            return ExactPoly::zero();
        }
        ExactPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    /// Multiplies every term by the monomial `m`.
    pub fn shift(&self, m: &Monomial) -> ExactPoly {
        ExactPoly::from_terms(self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())))
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> ExactPoly {
        ExactPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product that drops every partial product rejected by `keep`.
    ///
    /// `keep` must be closed downward under the product for the result to be
    /// the truncation of the full product; all degree bounds are.
    pub fn mul_filtered(&self, other: &ExactPoly, keep: impl Fn(&Monomial) -> bool) -> ExactPoly {
        let mut out = ExactPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> ExactPoly {
        let mut acc = ExactPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|p| p.0))
            .collect()
    }

    /// Largest exponent of `v` over all terms (0 for the zero polynomial).
    pub fn max_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_exp(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// Replaces `v` by `replacement` and expands.
    ///
    /// Negative powers of `v` need an invertible (single-term, Laurent)
    /// replacement. The result is checked against the Laurent rules.
    pub fn substitute(&self, v: Var, replacement: &ExactPoly) -> Result<ExactPoly> {
        let inverse = || -> Result<ExactPoly> {
            let mut it = replacement.terms.iter();
            match (it.next(), it.next()) {
                (Some((m, c)), None) => {
                    let inv = m.pow(-1);
                    inv.check().map_err(|_| Error::NotInvertible(v))?;
                    Ok(ExactPoly::term(inv, c.recip()))
                }
                _ => Err(Error::NotInvertible(v)),
            }
        };
        let mut pos: Vec<ExactPoly> = vec![ExactPoly::one()];
        let mut neg: Vec<ExactPoly> = vec![ExactPoly::one()];
        let mut out = ExactPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.take(v);
            let power = if e >= 0 {
                while pos.len() <= e as usize {
                    let next = pos.last().unwrap() * replacement;
                    pos.push(next);
                }
                &pos[e as usize]
            } else {
                let inv = inverse()?;
                while neg.len() <= (-e) as usize {
                    let next = neg.last().unwrap() * &inv;
                    neg.push(next);
                }
                &neg[(-e) as usize]
            };
            for (pm, pc) in &power.terms {
                out.add_term(pm.mul(&rest), pc * c);
            }
        }
        for m in out.terms.keys() {
            m.check()?;
        }
        Ok(out)
    }

    /// Substitutes the number `value` for `v`.
    pub fn eval(&self, v: Var, value: &Rational) -> ExactPoly {
        let mut out = ExactPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.take(v);
            out.add_term(rest, c * rational_pow(value, e));
        }
        out
    }

    /// Substitutes a numeric matrix dimension for `N`.
    pub fn eval_n(&self, n: &Rational) -> ExactPoly {
        self.eval(Var::N, n)
    }

    /// Applies `f` to every coefficient-monomial pair, summing the results.
    pub fn flat_map_terms(&self, mut f: impl FnMut(&Monomial, &Rational) -> ExactPoly) -> ExactPoly {
        let mut out = ExactPoly::zero();
        for (m, c) in &self.terms {
            out += f(m, c);
        }
        out
    }
}

/// `q^e` for any integer `e`; `0^e` with `e < 0` is treated as 0.
pub(crate) fn rational_pow(q: &Rational, e: i32) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    if q.is_zero() {
        return Rational::zero();
    }
    let base = if e < 0 { q.recip() } else { q.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        self.mul_filtered(rhs, |_| true)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}

impl AddAssign<&ExactPoly> for ExactPoly {
    fn add_assign(&mut self, rhs: &ExactPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for ExactPoly {
    fn add_assign(&mut self, rhs: ExactPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            for (m, c) in lhs.terms {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&ExactPoly> for ExactPoly {
    fn sub_assign(&mut self, rhs: &ExactPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $f(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $f(self, rhs: &ExactPoly) -> ExactPoly {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<ExactPoly> for &'a ExactPoly {
            type Output = ExactPoly;
            fn $f(self, rhs: ExactPoly) -> ExactPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for ExactPoly {
    fn sum<I: Iterator<Item = ExactPoly>>(iter: I) -> ExactPoly {
        let mut acc = ExactPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl From<Rational> for ExactPoly {
    fn from(c: Rational) -> Self {
        ExactPoly::constant(c)
    }
}

impl From<Var> for ExactPoly {
    fn from(v: Var) -> Self {
        ExactPoly::var(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn y() -> ExactPoly {
        ExactPoly::var(Var::Y)
    }
    fn n() -> ExactPoly {
        ExactPoly::var(Var::N)
    }

    #[test]
    fn difference_of_squares() {
        let one = ExactPoly::one();
        let p = (y() + &one) * (y() - &one);
        assert_eq!(p, y().pow(2) - one);
        assert_eq!(p.to_string(), "-1 + y^2");
    }

    #[test]
    fn annihilator_and_laurent_cancel() {
        assert!((y() * ExactPoly::zero()).is_zero());
        let ninv = ExactPoly::term(Monomial::new([(Var::N, -1)]).unwrap(), int(1));
        assert_eq!(ninv * n(), ExactPoly::one());
    }

    #[test]
    fn coefficients() {
        let p = y().pow(2) - ExactPoly::one();
        assert_eq!(p.coefficient_named(&[("y", 2)]).unwrap(), int(1));
        assert_eq!(p.coefficient_named(&[("y", 1)]).unwrap(), int(0));
        assert!(matches!(
            p.coefficient_named(&[("w", 1)]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn substitute_power_law() {
        let x2 = ExactPoly::var(Var::X).pow(2);
        let rep = ExactPoly::term(
            Monomial::new([(Var::N, 1), (Var::Z, 1), (Var::Y, -1)]).unwrap(),
            int(1),
        );
        let got = x2.substitute(Var::X, &rep).unwrap();
        let want = ExactPoly::term(
            Monomial::new([(Var::N, 2), (Var::Z, 2), (Var::Y, -2)]).unwrap(),
            int(1),
        );
        assert_eq!(got, want);
        let x = ExactPoly::var(Var::X);
        assert_eq!(x2.substitute(Var::X, &x).unwrap(), x2);
    }

    #[test]
    fn substitute_negative_power() {
        let yinv = ExactPoly::term(Monomial::new([(Var::Y, -1)]).unwrap(), int(1));
        let got = yinv.substitute(Var::Y, &n().scale(&int(2))).unwrap();
        let want = ExactPoly::term(Monomial::new([(Var::N, -1)]).unwrap(), rat(1, 2));
        assert_eq!(got, want);
        assert!(yinv.substitute(Var::Y, &(n() + ExactPoly::one())).is_err());
        // A Laurent replacement into a non-Laurent slot must be rejected.
        let x = ExactPoly::var(Var::X);
        assert!(y().substitute(Var::Y, &x).is_ok());
        assert!(yinv.substitute(Var::Y, &x).is_err());
    }

    #[test]
    fn eval_numeric_n() {
        let p = (n() - ExactPoly::one()).scale(&rat(1, 2));
        assert_eq!(p.eval_n(&int(3)).as_constant(), Some(int(1)));
        let ninv = ExactPoly::term(Monomial::new([(Var::N, -3)]).unwrap(), int(1));
        assert_eq!(ninv.eval_n(&int(3)).as_constant(), Some(rat(1, 27)));
    }

    #[test]
    fn coeff_of_partial() {
        // (N-1)/2 * z  +  N * z^2 y
        let z = ExactPoly::var(Var::Z);
        let p = (n() - ExactPoly::one()).scale(&rat(1, 2)) * &z + n() * z.pow(2) * y();
        let c = p.coeff_of(&[(Var::Z, 1), (Var::Y, 0)]);
        assert_eq!(c, (n() - ExactPoly::one()).scale(&rat(1, 2)));
    }
}
