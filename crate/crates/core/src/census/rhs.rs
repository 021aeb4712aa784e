//! Closed-form census sums over graph classes.

use rayon::prelude::*;

use super::covers::{dcdc_orbits, tdc_profile};
use super::generate::{generate_graphs_up_to, nimple_graphs_by_edges, GraphFilter};
use super::graph::{automorphism_order, SimpleGraph};
use crate::algebra::{falling_factorial, int, ExactPoly, Monomial, Rational, Var};
use crate::error::{check_scale, Result};

/// `N(N-1)…(N-v+1) / (aut · N^e) · y^y_exp`.
fn class_weight(g: &SimpleGraph, aut: u64, y_exp: usize) -> ExactPoly {
    let e = g.edge_count() as i32;
    falling_factorial(g.n())
        .scale(&Rational::new(1.into(), (aut as i64).into()))
        .shift(&Monomial::from_pairs_unchecked([
            (Var::N, -e),
            (Var::Y, y_exp as i32),
        ]))
}

/// Sum over nimple classes with `2e(G) ≤ max_edges` admitting a TDC of `r`
/// closed trails, of `y^e N(N-1)…(N-|V|+1) / (|Aut(G)| N^e)`. The empty
/// graph contributes `1` when `r = 0`.
pub fn rhs_main7(r: usize, max_edges: usize) -> Result<ExactPoly> {
    let classes = nimple_graphs_by_edges(max_edges / 2)?;
    let parts: Vec<Result<ExactPoly>> = classes
        .par_iter()
        .map(|g| {
            let profile = tdc_profile(g)?;
            if profile.get(r).copied().unwrap_or(0) == 0 {
                return Ok(ExactPoly::zero());
            }
            Ok(class_weight(g, automorphism_order(g), g.edge_count()))
        })
        .collect();
    parts.into_iter().sum::<Result<ExactPoly>>()
}

/// Sum over classes of pairs `(G, C)`, `G` nimple on `2..=n_max` vertices
/// and `C` a DCDC of `G`, of `N(N-1)…(N-|V|+1) / (|Aut(G,C)| N^e)`.
pub fn rhs_main2(n_max: usize) -> Result<ExactPoly> {
    check_scale("vertices", n_max, 6)?;
    let classes = generate_graphs_up_to(n_max, GraphFilter::Nimple)?;
    let parts: Vec<Result<ExactPoly>> = classes
        .par_iter()
        .filter(|g| g.n() >= 3)
        .map(|g| {
            let mut acc = ExactPoly::zero();
            for orbit in dcdc_orbits(g)? {
                acc += class_weight(g, orbit.stabilizer, 0);
            }
            Ok(acc)
        })
        .collect();
    parts.into_iter().sum::<Result<ExactPoly>>()
}

/// `rhs_main2` at a numeric `N`.
pub fn rhs_main2_at(n_max: usize, n: i64) -> Result<Rational> {
    Ok(rhs_main2(n_max)?.eval_n(&int(n)).constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn n_pow(e: i32) -> ExactPoly {
        ExactPoly::term(Monomial::from_pairs_unchecked([(Var::N, e)]), int(1))
    }

    #[test]
    fn main7_examples() {
        let p = rhs_main7(1, 4).unwrap();
        let y1 = p.coeff_of(&[(Var::Y, 1)]);
        assert_eq!(y1, (n_pow(1) - ExactPoly::one()).scale(&rat(1, 2)));
        let y2 = p.coeff_of(&[(Var::Y, 2)]);
        let want = falling_factorial(3).scale(&rat(1, 2)).shift(&Monomial::from_pairs_unchecked([(Var::N, -2)]));
        assert_eq!(y2, want);
        assert_eq!(rhs_main7(0, 8).unwrap(), ExactPoly::one());
    }

    #[test]
    fn main2_examples() {
        assert!(rhs_main2(2).unwrap().is_zero());
        let p = rhs_main2(3).unwrap();
        let want = falling_factorial(3).scale(&rat(1, 6)).shift(&Monomial::from_pairs_unchecked([(Var::N, -3)]));
        assert_eq!(p, want);
        assert_eq!(rhs_main2_at(3, 3).unwrap(), rat(1, 27));
    }

    #[test]
    fn main7_matches_omega_expectation() {
        use crate::integrands::{integrate_omega_symbolic, SupportRoute};
        for r in 0..=3 {
            assert_eq!(
                rhs_main7(r, 8).unwrap(),
                integrate_omega_symbolic(r, 8, SupportRoute::PairableOnly),
                "r={r}"
            );
        }
    }

    #[test]
    fn main2_matches_xi_expectation() {
        use crate::integrands::{integrate_xi_symbolic, SupportRoute};
        for n in 2..=5u16 {
            let xi = integrate_xi_symbolic(n, SupportRoute::PairableOnly) - ExactPoly::one();
            assert_eq!(rhs_main2(n as usize).unwrap(), xi, "n_max={n}");
        }
    }
}
