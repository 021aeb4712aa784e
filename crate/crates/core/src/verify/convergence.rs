//! Planar-count extraction from `⟨η⟩` at `x = N z / y`, and the residual
//! sweep over numeric `N`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    factorial, falling_factorial, fmt_rational, int, ExactPoly, Monomial, Rational, Truncation,
    TruncatedSeries, Var, VarGroup,
};
use crate::census::{automorphism_order, nimple_graphs_by_edges, p_oracle, SimpleGraph};
use crate::error::{check_scale, Error, Result};
use crate::integrands::specialize_eta;

/// Edge budget (undirected) for the class sum behind the extraction.
pub const MAX_CONVERGENCE_EDGES: usize = 6;

/// The cutoff function `s(N)` of the harness configuration.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SOfN {
    #[default]
    Sqrt,
    Log,
    Const(u64),
}

impl SOfN {
    pub fn value(self, n: u16) -> u64 {
        match self {
            SOfN::Sqrt => (n as f64).sqrt().floor() as u64,
            SOfN::Log => (n as f64).ln().floor().max(0.0) as u64,
            SOfN::Const(k) => k,
        }
    }
}

impl fmt::Display for SOfN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SOfN::Sqrt => f.write_str("sqrt"),
            SOfN::Log => f.write_str("log"),
            SOfN::Const(k) => write!(f, "const:{k}"),
        }
    }
}

impl FromStr for SOfN {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt" => Ok(SOfN::Sqrt),
            "log" => Ok(SOfN::Log),
            _ => s
                .strip_prefix("const:")
                .and_then(|k| k.parse().ok())
                .map(SOfN::Const)
                .ok_or_else(|| Error::Config(format!("unknown s(N) selector `{s}`"))),
        }
    }
}

impl Serialize for SOfN {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Edge counts of the connected components that carry edges.
fn component_edge_counts(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let edges = g.edges();
    for &(u, v) in &edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let mut counts = vec![0usize; n];
    for &(u, _) in &edges {
        let root = find(&mut parent, u);
        counts[root] += 1;
    }
    counts.into_iter().filter(|&c| c > 0).collect()
}

/// `⟨η⟩` in `x`, `y` and `N`, over edge sets with at most `max_edges`
/// undirected edges, as a sum over nimple graph classes.
///
/// Only reversal-closed sets have a proper pairing, and such a set has
/// exactly one, worth `N^{-e}`. So a class `G` contributes
/// `N(N-1)…(N-v+1)/|Aut G| · N^{-e} y^e ∏_C (x + … + x^{e(C)})`.
pub fn eta_by_classes(max_edges: usize) -> Result<ExactPoly> {
    let classes = nimple_graphs_by_edges(max_edges)?;
    let parts: Vec<ExactPoly> = classes
        .par_iter()
        .map(|g| {
            let e = g.edge_count() as i32;
            let mut u = ExactPoly::one();
            for c in component_edge_counts(g) {
                let factor = ExactPoly::from_terms(
                    (1..=c as i32).map(|i| (Monomial::from_pairs_unchecked([(Var::X, i)]), int(1))),
                );
                u = &u * &factor;
            }
            let aut = Rational::new(1.into(), (automorphism_order(g) as i64).into());
            (falling_factorial(g.n()).scale(&aut) * u)
                .shift(&Monomial::from_pairs_unchecked([(Var::N, -e), (Var::Y, e)]))
        })
        .collect();
    Ok(parts.into_iter().sum())
}

/// `(1/N²)·log(e^{-N²}⟨η(M, N z y⁻¹, y)⟩)`, exact in `N`, truncated at
/// `y^{y_max}` and `z^{z_max}`.
pub fn scaled_log_eta(y_max: usize, z_max: usize) -> Result<ExactPoly> {
    let max_edges = y_max + z_max;
    check_scale("edges for the planar extraction", max_edges, MAX_CONVERGENCE_EDGES)?;
    let eta = specialize_eta(&eta_by_classes(max_edges)?);
    let t = Truncation::new()
        .with(VarGroup::Single(Var::Y), y_max as i64)
        .with(VarGroup::Single(Var::Z), z_max as i64);
    let log = TruncatedSeries::new(eta, t)?.log()?.into_payload();
    let n_sq = ExactPoly::term(Monomial::from_pairs_unchecked([(Var::N, 2)]), int(1));
    Ok((log - n_sq).shift(&Monomial::from_pairs_unchecked([(Var::N, -2)])))
}

/// `n!` times the coefficient of `z^r y^{n-2}`, as a Laurent polynomial in
/// `N`. Zero for `n < 2`, where the exponent of `y` would be negative.
pub fn planar_coefficient(scaled_log: &ExactPoly, n: usize, r: usize) -> ExactPoly {
    if n < 2 {
        return ExactPoly::zero();
    }
    scaled_log
        .coeff_of(&[(Var::Y, n as i32 - 2), (Var::Z, r as i32)])
        .scale(&factorial(n))
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioCheck {
    pub from: u16,
    pub to: u16,
    pub ratio: Option<String>,
    pub within: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub r: usize,
    pub p: u64,
    /// `n!·coefficient` as a Laurent polynomial in `N`; absent when the
    /// row lies beyond the extraction edge budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    /// `n!·coefficient` at each swept `N`.
    pub values: Vec<String>,
    /// `|n!·coefficient - p(n, r)|` at each swept `N`.
    pub residuals: Vec<String>,
    pub ratios: Vec<RatioCheck>,
    pub decreasing: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceTable {
    pub sweep: Vec<u16>,
    pub s_of_n: SOfN,
    /// `s(N)` for each swept `N`. The extracted coefficients are exact and
    /// do not depend on it.
    pub s_values: Vec<u64>,
    pub ratio_bounds: [String; 2],
    pub rows: Vec<ConvergenceRow>,
    /// `(n, Σ_r p(n, r))`.
    pub p_totals: Vec<(usize, u64)>,
}

impl ConvergenceTable {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn ratio_bounds() -> (Rational, Rational) {
    (Rational::new(1.into(), 5.into()), Rational::new(4.into(), 5.into()))
}

fn check_row(n: usize, r: usize, p: u64, coeff: Option<&ExactPoly>, sweep: &[u16]) -> ConvergenceRow {
    let Some(coeff) = coeff else {
        return ConvergenceRow {
            n,
            r,
            p,
            coefficient: None,
            values: Vec::new(),
            residuals: Vec::new(),
            ratios: Vec::new(),
            decreasing: false,
            pass: false,
        };
    };
    let values: Vec<Rational> = sweep
        .iter()
        .map(|&big_n| coeff.eval_n(&int(big_n as i64)).constant_term())
        .collect();
    let residuals: Vec<Rational> = values.iter().map(|v| num::abs(v - int(p as i64))).collect();
    let all_zero = residuals.iter().all(|e| *e == int(0));
    let decreasing = all_zero || residuals.windows(2).all(|w| w[1] < w[0]);
    let (lo, hi) = ratio_bounds();
    let mut ratios = Vec::new();
    for (i, &a) in sweep.iter().enumerate() {
        if let Some(j) = sweep.iter().position(|&b| b as u32 == 2 * a as u32) {
            let ratio = (residuals[i] != int(0)).then(|| &residuals[j] / &residuals[i]);
            let within = match &ratio {
                Some(q) => *q >= lo && *q <= hi,
                None => residuals[j] == int(0),
            };
            ratios.push(RatioCheck {
                from: a,
                to: sweep[j],
                ratio: ratio.as_ref().map(fmt_rational),
                within,
            });
        }
    }
    let pass = decreasing && ratios.iter().all(|q| q.within);
    ConvergenceRow {
        n,
        r,
        p,
        coefficient: Some(coeff.to_string()),
        values: values.iter().map(fmt_rational).collect(),
        residuals: residuals.iter().map(fmt_rational).collect(),
        ratios,
        decreasing,
        pass,
    }
}

/// Largest number of faces of a connected planar graph on `n` vertices.
fn max_faces(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        2 * n - 4
    }
}

/// Rows `(n, r)` with `p(n, r) > 0` for `n ≤ n_max`, each with the
/// extracted coefficient swept over `N` when `n + r - 2` fits the edge
/// budget.
pub fn planar_table(n_max: usize, sweep: &[u16], s_of_n: SOfN) -> Result<ConvergenceTable> {
    check_scale("vertices", n_max, 7)?;
    if sweep.is_empty() || sweep.contains(&0) {
        return Err(Error::Config("the N sweep needs positive values".into()));
    }
    let mut sweep = sweep.to_vec();
    sweep.sort_unstable();
    sweep.dedup();

    let mut cells = Vec::new();
    let mut p_totals = Vec::new();
    for n in 1..=n_max {
        let mut total = 0;
        for r in 1..=max_faces(n) {
            let p = p_oracle(n, r)?;
            total += p;
            if p > 0 {
                cells.push((n, r, p));
            }
        }
        p_totals.push((n, total));
    }
    let fits = |n: usize, r: usize| n + r <= MAX_CONVERGENCE_EDGES + 2;
    let y_max = cells.iter().filter(|c| fits(c.0, c.1)).map(|c| c.0.saturating_sub(2)).max();
    let z_max = cells.iter().filter(|c| fits(c.0, c.1)).map(|c| c.1).max();
    let scaled = match (y_max, z_max) {
        (Some(y), Some(z)) => Some(scaled_log_eta(y, z.min(MAX_CONVERGENCE_EDGES - y))?),
        _ => None,
    };
    let rows = cells
        .into_iter()
        .map(|(n, r, p)| {
            let coeff = scaled
                .as_ref()
                .filter(|_| fits(n, r))
                .map(|s| planar_coefficient(s, n, r));
            check_row(n, r, p, coeff.as_ref(), &sweep)
        })
        .collect();
    let (lo, hi) = ratio_bounds();
    Ok(ConvergenceTable {
        s_values: sweep.iter().map(|&n| s_of_n.value(n)).collect(),
        sweep,
        s_of_n,
        ratio_bounds: [fmt_rational(&lo), fmt_rational(&hi)],
        rows,
        p_totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrands::{build_eta, integrate_eta_symbolic, SupportRoute};
    use crate::wick::integrate;

    #[test]
    fn class_sum_matches_support_sum() {
        for e in [1, 2, 3] {
            assert_eq!(
                eta_by_classes(e).unwrap(),
                integrate_eta_symbolic(2 * e, SupportRoute::PairableOnly),
                "e={e}"
            );
        }
    }

    #[test]
    fn class_sum_matches_explicit_integral() {
        // Every undirected edge set on four vertices has at most six edges.
        let by_classes = eta_by_classes(6).unwrap();
        for n in [3u16, 4] {
            let explicit = integrate(&build_eta(n, 12)).eval_n(&int(n as i64));
            assert_eq!(by_classes.eval_n(&int(n as i64)), explicit, "N={n}");
        }
    }

    #[test]
    fn s_of_n_parse() {
        assert_eq!("sqrt".parse::<SOfN>().unwrap(), SOfN::Sqrt);
        assert_eq!("const:3".parse::<SOfN>().unwrap(), SOfN::Const(3));
        assert!("const:x".parse::<SOfN>().is_err());
        assert_eq!(SOfN::Sqrt.value(8), 2);
        assert_eq!(SOfN::Log.value(8), 2);
        assert_eq!(SOfN::Const(3).to_string(), "const:3");
    }

    #[test]
    fn single_edge_coefficient() {
        // One edge: C(N,2)·N^{-1}·y·x becomes C(N,2)·z, so 2!·C(N,2)/N² = (N-1)/N.
        let s = scaled_log_eta(0, 1).unwrap();
        let c = planar_coefficient(&s, 2, 1);
        assert_eq!(c.eval_n(&int(5)).constant_term(), Rational::new(4.into(), 5.into()));
    }

    #[test]
    fn table_shape() {
        let t = planar_table(4, &[4, 8], SOfN::Sqrt).unwrap();
        let cells: Vec<(usize, usize, u64)> = t.rows.iter().map(|r| (r.n, r.r, r.p)).collect();
        assert_eq!(
            cells,
            vec![(1, 1, 1), (2, 1, 1), (3, 1, 3), (3, 2, 1), (4, 1, 16), (4, 2, 15), (4, 3, 6), (4, 4, 1)]
        );
        assert_eq!(t.p_totals, vec![(1, 1), (2, 1), (3, 4), (4, 38)]);
        assert!(t.rows.iter().all(|r| r.coefficient.is_some()));
    }
}
