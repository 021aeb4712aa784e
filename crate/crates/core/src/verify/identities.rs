use std::collections::BTreeSet;

use super::convergence::{planar_table, SOfN};
use super::mismatch::{diff_case, Mismatch};
use super::{Identity, Report};
use crate::algebra::{int, ExactPoly, Monomial, Var};
use crate::census::{rhs_main2, rhs_main7};
use crate::error::{check_scale, Error, Result};
use crate::fatgraph::{rhs_main3, verify_bipz};
use crate::iharaselberg::{
    build_dprime, coin_lemma_check, truncated_product, verify_prr, witt_product, SplitRule,
};
use crate::integrands::{
    integrate_spec, specialize_eta, IntegrandKind, IntegrandSpec, MAX_HALF_EDGES,
};

/// Accumulates sub-check results for one report.
#[derive(Default)]
struct Tally {
    compared: usize,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn compare(&mut self, case: &str, lhs: &ExactPoly, rhs: &ExactPoly) {
        let monomials: BTreeSet<&Monomial> =
            lhs.terms().chain(rhs.terms()).map(|(m, _)| m).collect();
        self.compared += monomials.len().max(1);
        self.mismatches.extend(diff_case(case, lhs, rhs));
    }

    fn report(self, identity: Identity, n: Option<u16>, degree_bound: usize) -> Report {
        Report::new(identity, n, degree_bound, self.compared, self.mismatches)
    }
}

fn at_n(p: ExactPoly, n: Option<u16>) -> ExactPoly {
    match n {
        Some(n) => p.eval_n(&int(n as i64)),
        None => p,
    }
}

fn spec(kind: IntegrandKind, n: Option<u16>, r: usize, max_edges: usize) -> IntegrandSpec {
    IntegrandSpec {
        n,
        r,
        max_edges,
        ..IntegrandSpec::new(kind)
    }
}

/// `⟨ω_r⟩` against the sum over nimple classes admitting an `r`-trail
/// double cover.
pub fn verify_main7(n: Option<u16>, rs: &[usize], max_edges: usize) -> Result<Report> {
    let mut t = Tally::default();
    for &r in rs {
        let lhs = integrate_spec(&spec(IntegrandKind::Omega, n, r, max_edges))?;
        let rhs = at_n(rhs_main7(r, max_edges)?, n);
        t.compare(&format!("r={r}"), &lhs, &rhs);
    }
    Ok(t.report(Identity::Main7, n, max_edges))
}

/// `⟨ω_r⟩`, the trail-double-cover class sum, and the fat-graph sum over
/// relevant pairs, all three against each other.
pub fn verify_main3(n: Option<u16>, rs: &[usize], max_edges: usize) -> Result<Report> {
    let mut t = Tally::default();
    for &r in rs {
        let lhs = integrate_spec(&spec(IntegrandKind::Omega, n, r, max_edges))?;
        let seven = at_n(rhs_main7(r, max_edges)?, n);
        let three = at_n(rhs_main3(r, max_edges)?, n);
        t.compare(&format!("r={r} omega=main7"), &lhs, &seven);
        t.compare(&format!("r={r} omega=main3"), &lhs, &three);
    }
    Ok(t.report(Identity::Main3, n, max_edges))
}

/// `⟨ζ⟩ = ⟨η⟩` in `x`, `y`, then after `x → N z / y`.
pub fn verify_ice(n: Option<u16>, max_edges: usize) -> Result<Report> {
    let zeta = integrate_spec(&spec(IntegrandKind::Zeta, n, 0, max_edges))?;
    let eta = integrate_spec(&spec(IntegrandKind::Eta, n, 0, max_edges))?;
    let mut t = Tally::default();
    t.compare("x,y", &zeta, &eta);
    t.compare(
        "x=Nz/y",
        &at_n(specialize_eta(&zeta), n),
        &at_n(specialize_eta(&eta), n),
    );
    Ok(t.report(Identity::Ice, n, max_edges))
}

/// `⟨ξ⟩ - 1` against the sum over classes of graphs with a directed cycle
/// double cover. Numeric `N` needs `n_max ≥ N`; symbolic `N` is exact for
/// every `N ≤ n_max`.
pub fn verify_main2(n: Option<u16>, n_max: Option<u16>) -> Result<Report> {
    let n_max = match (n, n_max) {
        (Some(n), None) => n,
        (Some(n), Some(m)) if m < n => {
            return Err(Error::Config(format!(
                "n_max = {m} misses graphs on {n} vertices"
            )))
        }
        (None, None) => 5,
        (_, Some(m)) => m,
    };
    let xi = IntegrandSpec {
        n,
        n_max: Some(n_max),
        ..IntegrandSpec::new(IntegrandKind::Xi)
    };
    let lhs = integrate_spec(&xi)? - ExactPoly::one();
    let rhs = at_n(rhs_main2(n_max as usize)?, n);
    let mut t = Tally::default();
    t.compare("xi-1", &lhs, &rhs);
    Ok(t.report(Identity::Main2, n, n_max as usize))
}

fn entry_degree(m: &Monomial) -> usize {
    m.degree_where(|v| v.is_entry()) as usize
}

/// The walk product against `ξ` up to entry degree `max_m_degree`, plus
/// split-rule independence, stability in the bound, and multilinearity.
pub fn verify_prr_report(n: u16, max_m_degree: usize) -> Result<Report> {
    let check = verify_prr(n, max_m_degree, SplitRule::FirstTwo)?;
    let mut t = Tally {
        compared: check.compared,
        mismatches: check
            .mismatches
            .into_iter()
            .map(|m| Mismatch {
                case: "product=xi".into(),
                ..m
            })
            .collect(),
    };
    let dp = build_dprime(n)?;
    let first = truncated_product(&dp, max_m_degree, SplitRule::FirstTwo)?;
    let last = truncated_product(&dp, max_m_degree, SplitRule::LastTwo)?;
    t.compare("split first=last", &first, &last);
    for d in max_m_degree.saturating_sub(2).max(1)..max_m_degree {
        let lower = truncated_product(&dp, d, SplitRule::FirstTwo)?;
        t.compare(
            &format!("stable {d}<{max_m_degree}"),
            &lower,
            &first.filter(|m| entry_degree(m) <= d),
        );
    }
    let squared = first.filter(|m| m.iter().any(|(v, e)| v.is_entry() && e > 1));
    t.compare("squared entries cancel", &squared, &ExactPoly::zero());
    Ok(t.report(Identity::Prr, Some(n), max_m_degree))
}

/// `log⟨ψ⟩` against genus-graded map counts, with symbolic `N`.
pub fn verify_bipz_report(degrees: &[u32], max_z_order: usize) -> Result<Report> {
    let top = degrees.iter().copied().max().unwrap_or(0) as usize;
    let max_half_edges = (top * max_z_order).min(MAX_HALF_EDGES);
    let check = verify_bipz(degrees, max_z_order, max_half_edges)?;
    let mismatches = check
        .mismatches
        .into_iter()
        .map(|m| Mismatch {
            case: String::new(),
            monomial: m.monomial,
            lhs: m.integral_side,
            rhs: m.map_side,
        })
        .collect();
    Ok(Report::new(
        Identity::Bipz,
        None,
        max_z_order,
        check.compared,
        mismatches,
    ))
}

/// Partitions of `total`, parts in decreasing order.
fn partitions(total: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=left.min(cap)).rev() {
            cur.push(part);
            go(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// The alternating arrangement count over every coin multiset with total
/// size in `lo..=hi`. Relabelling coin kinds does not change the count, so
/// each multiset is taken once, as a partition of its size.
pub fn verify_coin(lo: usize, hi: usize) -> Result<Report> {
    if lo < 2 || lo > hi {
        return Err(Error::Config(format!("coin totals {lo}..{hi} must satisfy 2 ≤ lo ≤ hi")));
    }
    check_scale("coins", hi, 7)?;
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for total in lo..=hi {
        for content in partitions(total) {
            let sum = coin_lemma_check(&content)?;
            compared += 1;
            if sum != 0 {
                mismatches.push(Mismatch {
                    case: format!("total={total}"),
                    monomial: format!("{content:?}"),
                    lhs: sum.to_string(),
                    rhs: "0".into(),
                });
            }
        }
    }
    Ok(Report::new(Identity::Coin, None, hi, compared, mismatches))
}

/// The truncated Witt product against `1 - z1 - … - zk`.
pub fn verify_witt(ks: &[usize], max_degree: usize) -> Result<Report> {
    let mut t = Tally::default();
    for &k in ks {
        let mut want = ExactPoly::one();
        if max_degree >= 1 {
            for i in 1..=k {
                want = want - ExactPoly::var(Var::Zi(i as u16));
            }
        }
        t.compare(&format!("k={k}"), &witt_product(k, max_degree)?, &want);
    }
    Ok(t.report(Identity::Witt, None, max_degree))
}

/// Residuals of the planar-count extraction over the `N` sweep; a row
/// fails unless its residual decreases and halves-ish under doubling `N`.
pub fn verify_planar_convergence(n_max: usize, sweep: &[u16], s_of_n: SOfN) -> Result<Report> {
    let table = planar_table(n_max, sweep, s_of_n)?;
    let (lo, hi) = (&table.ratio_bounds[0], &table.ratio_bounds[1]);
    let mismatches = table
        .rows
        .iter()
        .filter(|row| !row.pass)
        .map(|row| Mismatch {
            case: format!("n={} r={}", row.n, row.r),
            monomial: format!("z^{} y^{}", row.r, row.n as i64 - 2),
            lhs: format!("residuals [{}] at N = {:?}", row.residuals.join(", "), table.sweep),
            rhs: format!("decreasing, doubling ratio in [{lo}, {hi}]"),
        })
        .collect();
    let edges = table
        .rows
        .iter()
        .filter(|r| r.coefficient.is_some())
        .map(|r| r.n + r.r - 2)
        .max()
        .unwrap_or(0);
    let mut report = Report::new(
        Identity::PlanarConvergence,
        None,
        edges,
        table.rows.len(),
        mismatches,
    );
    report.table = Some(table);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn small_runs_pass() {
        assert!(verify_main7(None, &[0, 1], 4).unwrap().passed());
        assert!(verify_main7(Some(3), &[1], 4).unwrap().passed());
        assert!(verify_main3(None, &[1], 4).unwrap().passed());
        assert!(verify_ice(Some(2), 4).unwrap().passed());
        assert!(verify_ice(None, 4).unwrap().passed());
        assert!(verify_coin(2, 5).unwrap().passed());
        assert!(verify_witt(&[1, 2], 4).unwrap().passed());
        assert!(verify_prr_report(3, 4).unwrap().passed());
    }

    #[test]
    fn main2_at_three() {
        let r = verify_main2(Some(3), Some(3)).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert!(verify_main2(Some(4), Some(3)).is_err());
    }

    #[test]
    fn a_wrong_side_is_reported() {
        let mut t = Tally::default();
        t.compare("c", &ExactPoly::one(), &ExactPoly::zero());
        let r = t.report(Identity::Witt, None, 0);
        assert!(!r.passed());
        assert_eq!(r.mismatches[0].case, "c");
    }
}
