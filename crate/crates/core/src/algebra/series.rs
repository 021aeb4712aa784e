use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::{int, ExactPoly, Monomial, Rational, Var};
use crate::error::{Error, Result};

/// A set of variables whose combined degree is bounded.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarGroup {
    Single(Var),
    /// All indexed couplings `z_i` together.
    IndexedZ,
}

impl VarGroup {
    pub fn contains(self, v: Var) -> bool {
        match self {
            VarGroup::Single(w) => w == v,
            VarGroup::IndexedZ => matches!(v, Var::Zi(_)),
        }
    }

    pub fn parse(name: &str) -> Result<VarGroup> {
        if name == "z*" {
            return Ok(VarGroup::IndexedZ);
        }
        Var::parse(name).map(VarGroup::Single)
    }
}

impl fmt::Display for VarGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarGroup::Single(v) => write!(f, "{v}"),
            VarGroup::IndexedZ => f.write_str("z*"),
        }
    }
}

/// Maximum total degree retained per variable group.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Truncation {
    bounds: BTreeMap<VarGroup, i64>,
}

impl Truncation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, group: VarGroup, max_degree: i64) -> Self {
        let slot = self.bounds.entry(group).or_insert(max_degree);
        *slot = (*slot).min(max_degree);
        self
    }

    pub fn bounds(&self) -> impl Iterator<Item = (VarGroup, i64)> + '_ {
        self.bounds.iter().map(|(g, b)| (*g, *b))
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    /// The tighter of two truncations, over the union of their groups.
    pub fn meet(&self, other: &Truncation) -> Truncation {
        let mut out = self.clone();
        for (g, b) in other.bounds() {
            out = out.with(g, b);
        }
        out
    }

    fn group_of(&self, v: Var) -> Option<VarGroup> {
        self.bounds.keys().copied().find(|g| g.contains(v))
    }

    /// Whether `m` lies within every bound.
    pub fn admits(&self, m: &Monomial) -> bool {
        self.bounds
            .iter()
            .all(|(g, b)| m.degree_where(|v| g.contains(v)) <= *b)
    }

    /// Sum of the degrees of `m` over all bounded groups.
    fn graded_degree(&self, m: &Monomial) -> i64 {
        m.degree_where(|v| self.group_of(v).is_some())
    }

    pub fn apply(&self, p: &ExactPoly) -> ExactPoly {
        p.filter(|m| self.admits(m))
    }

    fn check(&self, p: &ExactPoly) -> Result<()> {
        for (m, _) in p.terms() {
            for (v, e) in m.iter() {
                if e < 0 && self.group_of(v).is_some() {
                    return Err(Error::NegativeTruncatedExponent(v));
                }
            }
        }
        Ok(())
    }
}

/// A polynomial read as a formal power series in the bounded variable
/// groups, truncated eagerly after every operation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    payload: ExactPoly,
    truncation: Truncation,
}

impl TruncatedSeries {
    pub fn new(payload: ExactPoly, truncation: Truncation) -> Result<Self> {
        truncation.check(&payload)?;
        let payload = truncation.apply(&payload);
        Ok(TruncatedSeries {
            payload,
            truncation,
        })
    }

    pub fn payload(&self) -> &ExactPoly {
        &self.payload
    }

    pub fn into_payload(self) -> ExactPoly {
        self.payload
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let t = self.truncation.meet(&other.truncation);
        TruncatedSeries {
            payload: t.apply(&(&self.payload + &other.payload)),
            truncation: t,
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let t = self.truncation.meet(&other.truncation);
        let payload = self.payload.mul_filtered(&other.payload, |m| t.admits(m));
        TruncatedSeries {
            payload,
            truncation: t,
        }
    }

    /// Terms of degree zero in every bounded group.
    fn constant_part(&self) -> ExactPoly {
        self.payload
            .filter(|m| self.truncation.graded_degree(m) == 0)
    }

    /// Longest power of a zero-constant series that can survive truncation.
    fn max_order(&self) -> i64 {
        self.truncation.bounds().map(|(_, b)| b.max(0)).sum()
    }

    fn powers_sum(&self, g: &ExactPoly, coeff: impl Fn(i64) -> Rational) -> ExactPoly {
        let t = &self.truncation;
        let mut out = ExactPoly::zero();
        let mut power = ExactPoly::one();
        for k in 1..=self.max_order() {
            power = power.mul_filtered(g, |m| t.admits(m));
            if power.is_zero() {
                break;
            }
            out += power.scale(&coeff(k));
        }
        out
    }

    /// `Σ f^k / k!`.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.constant_part().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut fact = Rational::one();
        let mut facts = vec![Rational::one()];
        for k in 1..=self.max_order() {
            fact *= int(k);
            facts.push(fact.clone());
        }
        let mut payload = ExactPoly::one();
        payload += self.powers_sum(&self.payload, |k| facts[k as usize].recip());
        Ok(TruncatedSeries {
            payload,
            truncation: self.truncation.clone(),
        })
    }

    /// `Σ (-1)^{k+1} (f-1)^k / k`.
    pub fn log(&self) -> Result<TruncatedSeries> {
        if self.constant_part() != ExactPoly::one() {
            return Err(Error::BadConstantTerm);
        }
        let g = &self.payload - &ExactPoly::one();
        let payload = self.powers_sum(&g, |k| {
            let c = Rational::new(1.into(), k.into());
            if k % 2 == 0 {
                -c
            } else {
                c
            }
        });
        Ok(TruncatedSeries {
            payload,
            truncation: self.truncation.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }
}

impl Zero for TruncatedSeries {
    fn zero() -> Self {
        TruncatedSeries {
            payload: ExactPoly::zero(),
            truncation: Truncation::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }
}

impl std::ops::Add for TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::add(&self, &rhs)
    }
}
