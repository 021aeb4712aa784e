//! Expectations at symbolic `N`.
//!
//! Every integrand is a sum over edge sets whose weight depends only on the
//! isomorphism type. Grouping sets by their vertex support, a set spanning
//! exactly `v` vertices has `C(N, v)` relabelled copies, so
//! `⟨f⟩ = Σ_v C(N, v) · Σ_{A spans [v]} weight(A) ⟨M^A⟩`.

use rayon::prelude::*;

use crate::algebra::{factorial, falling_factorial, int, ExactPoly, Monomial, Var};
use crate::digraph::{
    count_cycle_decompositions, for_each_eulerian, EdgeSet, EulerianFilter, TrailMemo,
};
use crate::wick::pairing_count_from_counts;

use super::u_polynomial;

/// Which edge sets the support sum visits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SupportRoute {
    /// Only reversal-closed sets, the only ones with a proper pairing.
    PairableOnly,
    /// Every eulerian set, letting the pairing count zero out the rest.
    AllEulerian,
}

/// `C(N, v)` as a polynomial in `N`.
pub fn binomial_n(v: usize) -> ExactPoly {
    falling_factorial(v).scale(&factorial(v).recip())
}

fn set_expectation(a: &EdgeSet) -> ExactPoly {
    let count = pairing_count_from_counts(a.iter().map(|e| (e, 1)));
    if count == 0.into() {
        return ExactPoly::zero();
    }
    ExactPoly::term(
        Monomial::from_pairs_unchecked([(Var::N, -((a.len() / 2) as i32))]),
        num::BigRational::from_integer(count),
    )
}

/// `Σ_v C(N,v) Σ_{A spans [v], |A| ≤ max_edges} weight(A)·⟨M^A⟩` for
/// `v ≤ max_vertices`.
fn support_sum<W>(max_vertices: usize, max_edges: usize, route: SupportRoute, weight: W) -> ExactPoly
where
    W: Fn(&EdgeSet, &mut TrailMemo) -> ExactPoly + Sync,
{
    let filter = EulerianFilter {
        full_support: true,
        symmetric_only: route == SupportRoute::PairableOnly,
    };
    let parts: Vec<ExactPoly> = (0..=max_vertices)
        .into_par_iter()
        .map(|v| {
            if v == 1 {
                return ExactPoly::zero();
            }
            let mut memo = TrailMemo::new();
            let mut inner = ExactPoly::zero();
            for_each_eulerian(v as u16, max_edges, filter, |a| {
                let e = set_expectation(a);
                if !e.is_zero() {
                    inner += weight(a, &mut memo) * e;
                }
            });
            binomial_n(v) * inner
        })
        .collect();
    parts.into_iter().sum()
}

fn y_pow(k: usize) -> ExactPoly {
    ExactPoly::term(Monomial::from_pairs_unchecked([(Var::Y, k as i32)]), int(1))
}

/// `⟨ω_r⟩` as a polynomial in `y` and Laurent in `N`.
pub fn integrate_omega_symbolic(r: usize, max_edges: usize, route: SupportRoute) -> ExactPoly {
    support_sum(max_edges, max_edges, route, |a, memo| {
        if r < 128 && memo.r_values(a) >> r & 1 == 1 {
            y_pow(a.len() / 2)
        } else {
            ExactPoly::zero()
        }
    })
}

pub fn integrate_zeta_symbolic(max_edges: usize, route: SupportRoute) -> ExactPoly {
    support_sum(max_edges, max_edges, route, |a, memo| {
        let mask = memo.r_values(a);
        let xs = ExactPoly::from_terms(
            (0..128usize)
                .filter(|r| mask >> r & 1 == 1)
                .map(|r| (Monomial::from_pairs_unchecked([(Var::X, r as i32)]), int(1))),
        );
        xs * y_pow(a.len() / 2)
    })
}

pub fn integrate_eta_symbolic(max_edges: usize, route: SupportRoute) -> ExactPoly {
    support_sum(max_edges, max_edges, route, |a, _| {
        u_polynomial(a) * y_pow(a.len() / 2)
    })
}

/// `⟨ξ⟩` restricted to edge sets on at most `n_max` vertices; exact for
/// every `N ≤ n_max`.
pub fn integrate_xi_symbolic(n_max: u16, route: SupportRoute) -> ExactPoly {
    let n = n_max as usize;
    support_sum(n, n * n.saturating_sub(1), route, |a, _| {
        ExactPoly::constant(int(count_cycle_decompositions(a, 3) as i64))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrands::{build_eta, build_omega, build_xi, build_zeta};
    use crate::wick::integrate;

    #[test]
    fn routes_agree() {
        for max in [2, 4, 6] {
            for r in 0..=3 {
                assert_eq!(
                    integrate_omega_symbolic(r, max, SupportRoute::PairableOnly),
                    integrate_omega_symbolic(r, max, SupportRoute::AllEulerian)
                );
            }
            assert_eq!(
                integrate_eta_symbolic(max, SupportRoute::PairableOnly),
                integrate_eta_symbolic(max, SupportRoute::AllEulerian)
            );
        }
        for n in 2..=4 {
            assert_eq!(
                integrate_xi_symbolic(n, SupportRoute::PairableOnly),
                integrate_xi_symbolic(n, SupportRoute::AllEulerian)
            );
        }
    }

    #[test]
    fn symbolic_matches_numeric() {
        for n in 2..=4u16 {
            let nn = int(n as i64);
            for r in 0..=3 {
                let sym = integrate_omega_symbolic(r, 6, SupportRoute::PairableOnly).eval_n(&nn);
                assert_eq!(sym, integrate(&build_omega(n, r, 6)).eval_n(&nn), "n={n} r={r}");
            }
            let sym = integrate_zeta_symbolic(4, SupportRoute::PairableOnly).eval_n(&nn);
            assert_eq!(sym, integrate(&build_zeta(n, 4)).eval_n(&nn));
            let sym = integrate_eta_symbolic(4, SupportRoute::PairableOnly).eval_n(&nn);
            assert_eq!(sym, integrate(&build_eta(n, 4)).eval_n(&nn));
        }
        for n in 2..=4u16 {
            let sym = integrate_xi_symbolic(n, SupportRoute::PairableOnly).eval_n(&int(n as i64));
            assert_eq!(sym, integrate(&build_xi(n)).eval_n(&int(n as i64)));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_n(0), ExactPoly::one());
        assert_eq!(binomial_n(3).eval_n(&int(5)).as_constant(), Some(int(10)));
        assert_eq!(binomial_n(4).eval_n(&int(3)).as_constant(), Some(int(0)));
    }
}
