//! Fat graphs with a partition of their faces whose contracted dual is a
//! nimple graph, grouped by the isomorphism class of that graph.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{maps::for_each_pairing, standard_rotation, FatGraph};
use crate::algebra::{falling_factorial, ExactPoly, Monomial, Rational, Var};
use crate::census::{automorphism_order, canonical_form, canonical_order, SimpleGraph};
use crate::error::{check_scale, Result};

/// Bound on the carrier degree `2e(W)` accepted by the enumeration.
pub const MAX_RELEVANT_EDGES: usize = 8;

/// A fat graph with labelled vertices together with a partition of its faces
/// (`partition[f]` is the class of face `f`).
#[derive(Clone, Debug, Serialize)]
pub struct RelevantPair {
    pub fat: FatGraph,
    pub partition: Vec<usize>,
}

/// One equivalence class: all pairs whose contracted dual is `graph`.
#[derive(Clone, Debug, Serialize)]
pub struct RelevantClass {
    /// Canonical form of the contracted dual.
    pub graph: SimpleGraph,
    pub aut_order: u64,
    /// Number of pairs found, counting each fat graph once per pairing of
    /// half-edges around a standard rotation.
    pub pair_count: u64,
    /// The first pair found.
    pub example: RelevantPair,
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 1..=left.saturating_sub(parts - 1) {
            cur.push(d);
            go(left - d, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Every fat graph on `r` labelled vertices of positive degree with exactly
/// `e` edges: each degree sequence with the standard rotation, paired in
/// every way.
pub fn for_each_fat_graph(r: usize, e: usize, mut visit: impl FnMut(&FatGraph)) {
    if r == 0 {
        if e == 0 {
            visit(&FatGraph {
                sigma: Vec::new(),
                alpha: Vec::new(),
            });
        }
        return;
    }
    for degrees in compositions(2 * e, r) {
        let sigma = standard_rotation(&degrees);
        for_each_pairing(2 * e, |alpha| {
            visit(&FatGraph {
                sigma: sigma.clone(),
                alpha: alpha.to_vec(),
            })
        });
    }
}

/// Face partitions with at most `bound` classes whose contraction of the
/// dual has no loop; visits `(classes, class_count)`.
fn for_each_loopless_partition(
    faces: usize,
    dual_edges: &[(usize, usize)],
    bound: usize,
    mut visit: impl FnMut(&[usize], usize),
) {
    let mut adjacent = vec![0u64; faces];
    for &(u, v) in dual_edges {
        adjacent[u] |= 1 << v;
        adjacent[v] |= 1 << u;
    }
    fn go(
        f: usize,
        blocks: usize,
        bound: usize,
        adjacent: &[u64],
        labels: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], usize),
    ) {
        if f == adjacent.len() {
            visit(labels, blocks);
            return;
        }
        if adjacent[f] >> f & 1 == 1 {
            return;
        }
        for c in 0..=blocks.min(bound.saturating_sub(1)) {
            if c == blocks && blocks == bound {
                break;
            }
            let clash = (0..f).any(|g| labels[g] == c && adjacent[f] >> g & 1 == 1);
            if clash {
                continue;
            }
            labels.push(c);
            go(f + 1, blocks.max(c + 1), bound, adjacent, labels, visit);
            labels.pop();
        }
    }
    go(0, 0, bound, &adjacent, &mut Vec::new(), &mut visit);
}

/// Relevant pairs on `r` vertices with `2e(W) ≤ max_edges` and at most
/// `class_bound` face classes (unbounded when `None`), grouped by the
/// isomorphism class of the contracted dual and ordered by edge count,
/// vertex count and canonical code.
pub fn enumerate_relevant(
    r: usize,
    max_edges: usize,
    class_bound: Option<usize>,
) -> Result<Vec<RelevantClass>> {
    check_scale("fat graph carrier degree", max_edges, MAX_RELEVANT_EDGES)?;
    check_scale("fat graph vertices", r, 4)?;
    let bound = class_bound.unwrap_or(usize::MAX);
    let mut fats = Vec::new();
    for e in 0..=max_edges / 2 {
        for_each_fat_graph(r, e, |w| fats.push(w.clone()));
    }
    type Found = BTreeMap<(usize, usize, u128), (u64, RelevantPair)>;
    let found: Vec<Found> = fats
        .into_par_iter()
        .map(|w| {
            let mut out = Found::new();
            let dual = w.dual();
            for_each_loopless_partition(dual.vertices, &dual.edges, bound, |classes, _| {
                if let Some(g) = dual.contract(classes).as_nimple() {
                    let (code, _) = canonical_order(&g);
                    out.entry((g.edge_count(), g.n(), code))
                        .or_insert_with(|| {
                            (
                                0,
                                RelevantPair {
                                    fat: w.clone(),
                                    partition: classes.to_vec(),
                                },
                            )
                        })
                        .0 += 1;
                }
            });
            out
        })
        .collect();
    let mut merged = Found::new();
    for part in found {
        for (k, (c, ex)) in part {
            merged.entry(k).or_insert((0, ex)).0 += c;
        }
    }
    Ok(merged
        .into_values()
        .map(|(pair_count, example)| {
            let dual = example.fat.dual().contract(&example.partition);
            let graph = canonical_form(&dual.as_nimple().expect("kept only nimple contractions"));
            RelevantClass {
                aut_order: automorphism_order(&graph),
                graph,
                pair_count,
                example,
            }
        })
        .collect())
}

/// `(vertex count, canonical code)` of every nimple graph arising as a
/// contracted dual of a fat graph on `r` vertices with `2e ≤ max_edges`.
pub fn realized_graphs(r: usize, max_edges: usize) -> Result<BTreeSet<(usize, u128)>> {
    Ok(enumerate_relevant(r, max_edges, None)?
        .into_iter()
        .map(|c| (c.graph.n(), c.graph.code()))
        .collect())
}

/// Sum over equivalence classes of relevant pairs of
/// `y^{e(W)} N(N-1)…(N-α(Q)+1) / (|Aut(G_Q(W*))| N^{e(W)})`.
pub fn rhs_main3(r: usize, max_edges: usize) -> Result<ExactPoly> {
    let mut out = ExactPoly::zero();
    for class in enumerate_relevant(r, max_edges, None)? {
        let e = class.graph.edge_count() as i32;
        out += falling_factorial(class.graph.n())
            .scale(&Rational::new(1.into(), (class.aut_order as i64).into()))
            .shift(&Monomial::from_pairs_unchecked([(Var::N, -e), (Var::Y, e)]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::census::{nimple_graphs_by_edges, rhs_main7, tdc_profile};

    #[test]
    fn small_classes() {
        let classes = enumerate_relevant(1, 2, None).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].graph, SimpleGraph::complete(2));
        assert_eq!(classes[0].pair_count, 1);
        // Two vertices joined by an edge: one face, the dual is a loop.
        let mut faces = Vec::new();
        for_each_fat_graph(2, 1, |w| faces.push(w.face_count()));
        assert_eq!(faces, vec![1]);
        assert!(enumerate_relevant(2, 2, None).unwrap().is_empty());
        let empty = enumerate_relevant(0, 8, None).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].graph.n(), 0);
    }

    #[test]
    fn main3_examples() {
        let p = rhs_main3(1, 4).unwrap();
        let y1 = p.coeff_of(&[(Var::Y, 1)]);
        assert_eq!(y1.eval_n(&int(5)).as_constant(), Some(int(2)));
        assert_eq!(y1, rhs_main7(1, 4).unwrap().coeff_of(&[(Var::Y, 1)]));
        assert_eq!(rhs_main3(0, 8).unwrap(), ExactPoly::one());
        let y2 = rhs_main3(2, 4).unwrap().coeff_of(&[(Var::Y, 2)]);
        assert_eq!(y2, rhs_main7(2, 4).unwrap().coeff_of(&[(Var::Y, 2)]));
    }

    #[test]
    fn matches_trail_census() {
        for r in 0..=3 {
            assert_eq!(rhs_main3(r, 8).unwrap(), rhs_main7(r, 8).unwrap(), "r={r}");
        }
    }

    #[test]
    fn realized_graphs_are_tdc_graphs() {
        let graphs = nimple_graphs_by_edges(4).unwrap();
        for r in 0..=3 {
            let want: BTreeSet<(usize, u128)> = graphs
                .iter()
                .filter(|g| tdc_profile(g).unwrap().get(r).copied().unwrap_or(0) > 0)
                .map(|g| (g.n(), g.code()))
                .collect();
            assert_eq!(realized_graphs(r, 8).unwrap(), want, "r={r}");
        }
    }

    #[test]
    fn class_bound_limits_vertices() {
        for c in enumerate_relevant(2, 6, Some(3)).unwrap() {
            assert!(c.graph.n() <= 3);
        }
    }

    #[test]
    fn euler_consistency() {
        for r in 1..=3 {
            for e in 1..=3 {
                for_each_fat_graph(r, e, |w| {
                    let g = w.genus().unwrap();
                    assert_eq!(w.dual().edges.len(), w.edge_count());
                    assert!(2 * g as usize <= w.edge_count() + 2);
                });
            }
        }
    }
}
