//! The product `∏_p (1 - ρ(p) w(p))` over aperiodic closed walks, truncated
//! by total matrix-entry degree.

use serde::Serialize;

use super::walks::{enumerate_aperiodic_walks, rotation_number, SplitRule};
use super::TransitionDigraph;
use crate::algebra::{int, ExactPoly, Monomial};
use crate::digraph::EulerianFilter;
use crate::error::Result;
use crate::integrands::build_xi_bounded;
use crate::verify::{diff, Mismatch};

fn entry_degree(m: &Monomial) -> usize {
    m.degree_where(|v| v.is_entry()) as usize
}

/// Expands the product over walks of degree at most `max_m_degree`, in
/// increasing walk degree, dropping monomials above the bound as it goes.
pub fn truncated_product(
    dp: &TransitionDigraph,
    max_m_degree: usize,
    rule: SplitRule,
) -> Result<ExactPoly> {
    let mut acc = ExactPoly::one();
    for w in enumerate_aperiodic_walks(dp, max_m_degree)? {
        let rho = rotation_number(dp, &w, rule);
        if rho == 0 {
            continue;
        }
        let weight = w.weight(dp).expect("enumerated walks have nonzero weight");
        let factor = ExactPoly::one() - ExactPoly::term(weight, int(rho as i64));
        acc = acc.mul_filtered(&factor, |m| entry_degree(m) <= max_m_degree);
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct PrrCheck {
    pub n: u16,
    pub degree_bound: usize,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Compares the truncated product with the cycle-decomposition integrand
/// restricted to degree at most `max_m_degree`.
pub fn verify_prr(n: u16, max_m_degree: usize, rule: SplitRule) -> Result<PrrCheck> {
    let dp = super::build_dprime(n)?;
    let lhs = truncated_product(&dp, max_m_degree, rule)?;
    let rhs = build_xi_bounded(n, max_m_degree, EulerianFilter::default());
    let compared = {
        let mut all: std::collections::BTreeSet<&Monomial> = lhs.terms().map(|(m, _)| m).collect();
        all.extend(rhs.terms().map(|(m, _)| m));
        all.len()
    };
    Ok(PrrCheck {
        n,
        degree_bound: max_m_degree,
        compared,
        mismatches: diff(&lhs, &rhs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;
    use crate::iharaselberg::build_dprime;

    #[test]
    fn n3_product() {
        let dp = build_dprime(3).unwrap();
        let p = truncated_product(&dp, 6, SplitRule::FirstTwo).unwrap();
        let tri = Monomial::from_pairs_unchecked([
            (Var::Entry(1, 2), 1),
            (Var::Entry(2, 3), 1),
            (Var::Entry(3, 1), 1),
        ]);
        assert_eq!(p.coefficient(&tri), int(1));
        let both = Monomial::from_pairs_unchecked(
            [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)].map(|(i, j)| (Var::Entry(i, j), 1)),
        );
        assert_eq!(p.coefficient(&both), int(1));
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn matches_xi() {
        for (n, d) in [(2, 6), (3, 6), (4, 6)] {
            let check = verify_prr(n, d, SplitRule::FirstTwo).unwrap();
            assert!(check.mismatches.is_empty(), "n={n}: {:?}", check.mismatches);
        }
        let check = verify_prr(2, 6, SplitRule::FirstTwo).unwrap();
        assert_eq!(check.compared, 1);
    }

    #[test]
    fn split_rules_agree() {
        let dp = build_dprime(4).unwrap();
        assert_eq!(
            truncated_product(&dp, 6, SplitRule::FirstTwo).unwrap(),
            truncated_product(&dp, 6, SplitRule::LastTwo).unwrap()
        );
    }

    #[test]
    fn stable_in_degree_bound() {
        let dp = build_dprime(4).unwrap();
        let p6 = truncated_product(&dp, 6, SplitRule::FirstTwo).unwrap();
        for d in [4, 5] {
            let pd = truncated_product(&dp, d, SplitRule::FirstTwo).unwrap();
            assert_eq!(pd, p6.filter(|m| entry_degree(m) <= d));
        }
    }

    #[test]
    fn surviving_monomials_are_multilinear() {
        let dp = build_dprime(4).unwrap();
        let p = truncated_product(&dp, 6, SplitRule::FirstTwo).unwrap();
        for (m, _) in p.terms() {
            assert!(m.iter().all(|(_, e)| e == 1), "{m}");
        }
    }
}
