use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{fmt_rational, ExactPoly, Monomial};

/// A monomial whose coefficients differ between the two sides of an
/// identity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Mismatch {
    /// Which sub-check of a multi-part identity, when there are several.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub case: String,
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

/// Coefficient-by-coefficient difference of two polynomials, in monomial
/// order.
pub fn diff(lhs: &ExactPoly, rhs: &ExactPoly) -> Vec<Mismatch> {
    let monomials: BTreeSet<&Monomial> = lhs.terms().chain(rhs.terms()).map(|(m, _)| m).collect();
    monomials
        .into_iter()
        .filter_map(|m| {
            let (a, b) = (lhs.coefficient(m), rhs.coefficient(m));
            (a != b).then(|| Mismatch {
                case: String::new(),
                monomial: m.to_string(),
                lhs: fmt_rational(&a),
                rhs: fmt_rational(&b),
            })
        })
        .collect()
}

/// [`diff`] with every mismatch tagged by `case`.
pub fn diff_case(case: &str, lhs: &ExactPoly, rhs: &ExactPoly) -> Vec<Mismatch> {
    diff(lhs, rhs)
        .into_iter()
        .map(|m| Mismatch {
            case: case.to_string(),
            ..m
        })
        .collect()
}
