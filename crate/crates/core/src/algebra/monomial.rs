use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::Var;
use crate::error::{Error, Result};

/// A sparse exponent vector: `(variable, exponent)` pairs sorted by variable,
/// with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[(Var, i32); 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(smallvec::smallvec![(v, 1)])
    }

    /// Builds a monomial, merging repeated variables and rejecting negative
    /// exponents on non-Laurent variables.
    pub fn new(pairs: impl IntoIterator<Item = (Var, i32)>) -> Result<Self> {
        let m = Self::from_pairs_unchecked(pairs);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn from_pairs_unchecked(pairs: impl IntoIterator<Item = (Var, i32)>) -> Self {
        let mut v: SmallVec<[(Var, i32); 8]> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, i32); 8]> = SmallVec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub(crate) fn check(&self) -> Result<()> {
        for &(var, exp) in &self.0 {
            if exp < 0 && !var.is_laurent() {
                return Err(Error::NegativeExponent { var, exp });
            }
        }
        Ok(())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn exp(&self, v: Var) -> i32 {
        match self.0.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    /// Total degree restricted to variables satisfying `pred`.
    pub fn degree_where(&self, pred: impl Fn(Var) -> bool) -> i64 {
        self.0
            .iter()
            .filter(|p| pred(p.0))
            .map(|p| p.1 as i64)
            .sum()
    }

    /// Splits into the part over variables satisfying `pred` and the rest.
    pub fn split(&self, pred: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let mut a = SmallVec::new();
        let mut b = SmallVec::new();
        for &p in &self.0 {
            if pred(p.0) {
                a.push(p);
            } else {
                b.push(p);
            }
        }
        (Monomial(a), Monomial(b))
    }

    /// Removes `v` from the monomial, returning its exponent.
    pub fn take(&self, v: Var) -> (i32, Monomial) {
        let mut rest = self.clone();
        match rest.0.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => {
                let e = rest.0.remove(i).1;
                (e, rest)
            }
            Err(_) => (0, rest),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Entries `(i, j)` with multiplicity, in sorted order.
    pub fn entries(&self) -> impl Iterator<Item = ((u16, u16), i32)> + '_ {
        self.0.iter().filter_map(|&(v, e)| match v {
            Var::Entry(i, j) => Some(((i, j), e)),
            _ => None,
        })
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

/// Graded lexicographic order: total degree first, then lexicographic over
/// the registry order (a larger exponent on an earlier variable is larger).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
