//! Connected map counts by genus and their generating function.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{standard_rotation, FatGraph};
use crate::algebra::{factorial, int, ExactPoly, Monomial, Truncation, TruncatedSeries, Var, VarGroup};
use crate::error::{check_scale, Error, Result};
use crate::integrands::{integrate_psi_symbolic, MAX_HALF_EDGES};

/// Visits every fixed-point-free involution on `0..m` (`m` even).
pub fn for_each_pairing(m: usize, mut visit: impl FnMut(&[usize])) {
    fn go(alpha: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let Some(h) = alpha.iter().position(|&x| x == usize::MAX) else {
            visit(alpha);
            return;
        };
        for k in h + 1..alpha.len() {
            if alpha[k] == usize::MAX {
                alpha[h] = k;
                alpha[k] = h;
                go(alpha, visit);
                alpha[k] = usize::MAX;
            }
        }
        alpha[h] = usize::MAX;
    }
    if m % 2 == 1 {
        return;
    }
    go(&mut vec![usize::MAX; m], &mut visit);
}

/// Connected fat graphs with vertex degrees `degrees` (standard rotation at
/// each vertex, every pairing of half-edges), counted by genus.
pub fn map_counts(degrees: &[usize]) -> Result<BTreeMap<u32, u64>> {
    let m: usize = degrees.iter().sum();
    check_scale("half-edges", m, MAX_HALF_EDGES)?;
    if degrees.contains(&0) {
        return Err(Error::Config("vertex degrees must be positive".into()));
    }
    let sigma = standard_rotation(degrees);
    let mut out = BTreeMap::new();
    let mut err = None;
    for_each_pairing(m, |alpha| {
        let w = FatGraph {
            sigma: sigma.clone(),
            alpha: alpha.to_vec(),
        };
        if w.component_count() == 1 {
            match w.genus() {
                Ok(g) => *out.entry(g).or_insert(0) += 1,
                Err(e) => err = Some(e),
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `M_g` for the given vertex degrees.
pub fn map_count(g: u32, degrees: &[usize]) -> Result<u64> {
    Ok(map_counts(degrees)?.get(&g).copied().unwrap_or(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct BipzMismatch {
    /// The `z`-monomial whose coefficients differ.
    pub monomial: String,
    pub integral_side: String,
    pub map_side: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BipzCheck {
    pub compared: usize,
    pub mismatches: Vec<BipzMismatch>,
}

/// Compares `log⟨ψ⟩` with
/// `Σ_g N^{2-2g} Σ ∏_i (-z_i)^{n_i} / (n_i! i^{n_i}) · M_g(n)`
/// coefficient by coefficient, over multi-indices with `Σ n_i ≤ max_z_order`
/// and `Σ i·n_i ≤ max_half_edges`.
pub fn verify_bipz(degrees: &[u32], max_z_order: usize, max_half_edges: usize) -> Result<BipzCheck> {
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    let weight = |m: &Monomial| -> usize {
        m.iter()
            .map(|(v, e)| match v {
                Var::Zi(i) => i as usize * e as usize,
                _ => 0,
            })
            .sum()
    };
    let psi = integrate_psi_symbolic(&degrees, max_z_order, max_half_edges)?;
    let t = Truncation::new().with(VarGroup::IndexedZ, max_z_order as i64);
    let log = TruncatedSeries::new(psi, t)?.log()?.into_payload();
    let log = log.filter(|m| weight(m) <= max_half_edges);

    let mut lhs: BTreeMap<Monomial, ExactPoly> = BTreeMap::new();
    for (m, c) in log.terms() {
        let (z, n) = m.split(|v| matches!(v, Var::Zi(_)));
        lhs.entry(z).or_insert_with(ExactPoly::zero).add_term(n, c.clone());
    }

    let mut compared = 0;
    let mut mismatches = Vec::new();
    for ns in crate::integrands::z_multi_indices(&degrees, max_z_order, max_half_edges) {
        let z = Monomial::from_pairs_unchecked(
            ns.iter()
                .zip(&degrees)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, &d)| (Var::Zi(d as u16), k as i32)),
        );
        let mut vertex_degrees = Vec::new();
        let mut prefactor = int(1);
        for (&k, &d) in ns.iter().zip(&degrees) {
            vertex_degrees.extend(std::iter::repeat_n(d as usize, k));
            let sign = if k % 2 == 1 { int(-1) } else { int(1) };
            prefactor = prefactor * sign / (factorial(k) * int(d as i64).pow(k as i32));
        }
        let mut rhs = ExactPoly::zero();
        if !vertex_degrees.is_empty() {
            for (g, count) in map_counts(&vertex_degrees)? {
                let n = Monomial::from_pairs_unchecked([(Var::N, 2 - 2 * g as i32)]);
                rhs.add_term(n, prefactor.clone() * int(count as i64));
            }
        }
        let got = lhs.remove(&z).unwrap_or_else(ExactPoly::zero);
        compared += 1;
        if got != rhs {
            mismatches.push(BipzMismatch {
                monomial: z.to_string(),
                integral_side: got.to_string(),
                map_side: rhs.to_string(),
            });
        }
    }
    for (z, got) in lhs {
        if !got.is_zero() {
            mismatches.push(BipzMismatch {
                monomial: z.to_string(),
                integral_side: got.to_string(),
                map_side: "0".into(),
            });
        }
    }
    Ok(BipzCheck {
        compared,
        mismatches,
    })
}
