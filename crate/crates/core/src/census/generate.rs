use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::graph::{canonical_form, canonical_order, SimpleGraph};
use crate::error::{check_scale, Result};

/// Desk-scale bound on vertex counts for class generation.
pub const MAX_GENERATE: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFilter {
    All,
    Connected,
    /// No isolated vertex.
    Nimple,
}

impl GraphFilter {
    pub fn accepts(self, g: &SimpleGraph) -> bool {
        match self {
            GraphFilter::All => true,
            GraphFilter::Connected => g.is_connected(),
            GraphFilter::Nimple => g.is_nimple(),
        }
    }
}

/// Canonical representatives of every isomorphism class on exactly `n`
/// vertices, ordered by canonical code.
///
/// Classes on `n` vertices come from classes on `n - 1` by attaching a new
/// vertex to every possible neighbourhood; since deleting any vertex of a
/// graph leaves a graph one size down, nothing is missed.
fn all_classes(n: usize) -> Vec<SimpleGraph> {
    let mut level = vec![SimpleGraph::empty(0)];
    for k in 0..n {
        let next: BTreeMap<u128, SimpleGraph> = level
            .par_iter()
            .flat_map_iter(|g| (0..1u16 << k).map(move |mask| g.with_vertex(mask)))
            .map(|h| {
                let c = canonical_form(&h);
                (c.code(), c)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        level = next.into_values().collect();
    }
    level
}

/// Isomorphism classes on exactly `n` vertices passing `filter`.
pub fn generate_graphs(n: usize, filter: GraphFilter) -> Result<Vec<SimpleGraph>> {
    check_scale("vertices", n, MAX_GENERATE)?;
    Ok(all_classes(n)
        .into_iter()
        .filter(|g| filter.accepts(g))
        .collect())
}

/// Classes on `0..=n_max` vertices passing `filter`, by vertex count then
/// canonical code.
pub fn generate_graphs_up_to(n_max: usize, filter: GraphFilter) -> Result<Vec<SimpleGraph>> {
    check_scale("vertices", n_max, MAX_GENERATE)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.extend(all_classes(n).into_iter().filter(|g| filter.accepts(g)));
    }
    Ok(out)
}

/// Nimple classes with at most `max_edges` edges (any vertex count), ordered
/// by edge count, vertex count and canonical code. The empty graph is the
/// single class with no edges.
///
/// Grown one edge at a time: deleting an edge of a nimple graph and then its
/// newly isolated endpoints leaves a nimple graph with one edge fewer.
pub fn nimple_graphs_by_edges(max_edges: usize) -> Result<Vec<SimpleGraph>> {
    check_scale("edges", max_edges, 8)?;
    let mut out = vec![SimpleGraph::empty(0)];
    let mut level = vec![SimpleGraph::empty(0)];
    for _ in 0..max_edges {
        let next: BTreeMap<(usize, u128), SimpleGraph> = level
            .par_iter()
            .flat_map_iter(|g| {
                let n = g.n();
                let mut kids = Vec::new();
                for v in 0..n {
                    for u in 0..v {
                        if !g.has_edge(u, v) {
                            kids.push(g.with_edge(u, v));
                        }
                    }
                    kids.push(g.with_vertex(1 << v));
                }
                kids.push(g.with_vertex(0).with_vertex(1 << n));
                kids
            })
            .map(|h| {
                let (code, _) = canonical_order(&h);
                ((h.n(), code), canonical_form(&h))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        level = next.into_values().collect();
        out.extend(level.iter().cloned());
    }
    Ok(out)
}
