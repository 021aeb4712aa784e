//! The transition-weighted digraph `D′` built from the complete digraph on
//! `N` vertices, its closed walks and rotation numbers, and the product over
//! aperiodic walks that reproduces the cycle-decomposition integrand.
//!
//! Each vertex `v` is split into an entry copy and an exit copy joined by the
//! edge `e(v)`. Each opposite pair `u→v`, `v→u` is routed through a shared
//! joint `v_g`, `g = {u, v}`. Entering `e(v)` from the half `v_g → v` of
//! `u→v` costs `M_uv`; turning back at a joint costs `0`; everything else
//! costs `1`.

mod product;
mod walks;
mod words;

use serde::Serialize;

use crate::algebra::Var;
use crate::error::{check_scale, Result};

pub use product::{truncated_product, verify_prr, PrrCheck};
pub use walks::{enumerate_aperiodic_walks, rotation_number, ClosedWalkD, SplitRule};
pub use words::{
    aperiodic_necklaces, coin_arrangement_counts, coin_lemma_check, necklace_count, witt_check,
    witt_product,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum DVertex {
    /// Initial vertex of `e(v)`.
    Entry(u16),
    /// Terminal vertex of `e(v)`.
    Exit(u16),
    /// Joint shared by `u→v` and `v→u`, `u < v`.
    Joint(u16, u16),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum DEdgeKind {
    /// `e(v)`.
    Split(u16),
    /// `u⁺ → v_g`, the first half of `u→v`.
    Into(u16, u16),
    /// `v_g → v⁻`, the second half of `u→v`.
    OutOf(u16, u16),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DEdge {
    pub tail: usize,
    pub head: usize,
    pub kind: DEdgeKind,
}

/// Weight of passing from one edge to the next.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Transition {
    Zero,
    One,
    Entry(u16, u16),
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitionDigraph {
    n: u16,
    vertices: Vec<DVertex>,
    /// Indexed in the fixed order: halves by (pair, direction, half), then
    /// the `e(v)` by `v`.
    edges: Vec<DEdge>,
    #[serde(skip)]
    out_edges: Vec<Vec<usize>>,
}

impl TransitionDigraph {
    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn vertices(&self) -> &[DVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[DEdge] {
        &self.edges
    }

    pub fn out_edges(&self, vertex: usize) -> &[usize] {
        &self.out_edges[vertex]
    }

    pub fn is_split_edge(&self, e: usize) -> bool {
        matches!(self.edges[e].kind, DEdgeKind::Split(_))
    }

    pub fn is_joint(&self, vertex: usize) -> bool {
        matches!(self.vertices[vertex], DVertex::Joint(..))
    }

    /// Weight of the transition `a → b`; `Zero` also when `b` does not leave
    /// the head of `a`.
    pub fn transition(&self, a: usize, b: usize) -> Transition {
        let (ea, eb) = (self.edges[a], self.edges[b]);
        if ea.head != eb.tail {
            return Transition::Zero;
        }
        match (ea.kind, eb.kind) {
            (DEdgeKind::OutOf(u, v), DEdgeKind::Split(_)) => Transition::Entry(u, v),
            (DEdgeKind::Into(u, v), DEdgeKind::OutOf(x, y)) if (u, v) != (x, y) => Transition::Zero,
            _ => Transition::One,
        }
    }

    /// The `M_uv` a transition contributes, if any.
    pub fn transition_var(&self, a: usize, b: usize) -> Option<Var> {
        match self.transition(a, b) {
            Transition::Entry(u, v) => Some(Var::Entry(u, v)),
            _ => None,
        }
    }
}

/// `D′` for the complete digraph without loops on `n` vertices.
pub fn build_dprime(n: u16) -> Result<TransitionDigraph> {
    check_scale("matrix dimension for D′", n as usize, 8)?;
    let n_us = n as usize;
    let mut vertices = Vec::new();
    for v in 1..=n {
        vertices.push(DVertex::Entry(v));
        vertices.push(DVertex::Exit(v));
    }
    let entry = |v: u16| 2 * (v as usize - 1);
    let exit = |v: u16| 2 * (v as usize - 1) + 1;
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            let joint = vertices.len();
            vertices.push(DVertex::Joint(u, v));
            for (a, b) in [(u, v), (v, u)] {
                edges.push(DEdge {
                    tail: exit(a),
                    head: joint,
                    kind: DEdgeKind::Into(a, b),
                });
                edges.push(DEdge {
                    tail: joint,
                    head: entry(b),
                    kind: DEdgeKind::OutOf(a, b),
                });
            }
        }
    }
    for v in 1..=n {
        edges.push(DEdge {
            tail: entry(v),
            head: exit(v),
            kind: DEdgeKind::Split(v),
        });
    }
    let mut out_edges = vec![Vec::new(); vertices.len()];
    for (k, e) in edges.iter().enumerate() {
        out_edges[e.tail].push(k);
    }
    debug_assert_eq!(vertices.len(), 2 * n_us + n_us * n_us.saturating_sub(1) / 2);
    Ok(TransitionDigraph {
        n,
        vertices,
        edges,
        out_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let d = build_dprime(2).unwrap();
        assert_eq!(d.vertices().len(), 5);
        let splits = d.edges().iter().filter(|e| matches!(e.kind, DEdgeKind::Split(_))).count();
        assert_eq!((splits, d.edges().len() - splits), (2, 4));
        let d = build_dprime(3).unwrap();
        let joints: Vec<_> = d.vertices().iter().filter(|v| matches!(v, DVertex::Joint(..))).collect();
        assert_eq!(joints.len(), 3);
        assert_eq!(d.edges().len(), 3 + 12);
    }

    #[test]
    fn split_edges_are_last() {
        let d = build_dprime(4).unwrap();
        let first_split = d.edges().iter().position(|e| matches!(e.kind, DEdgeKind::Split(_))).unwrap();
        assert!(d.edges()[first_split..].iter().all(|e| matches!(e.kind, DEdgeKind::Split(_))));
    }

    #[test]
    fn transition_weights() {
        let d = build_dprime(3).unwrap();
        let find = |k: DEdgeKind| d.edges().iter().position(|e| e.kind == k).unwrap();
        let into12 = find(DEdgeKind::Into(1, 2));
        let out12 = find(DEdgeKind::OutOf(1, 2));
        let out21 = find(DEdgeKind::OutOf(2, 1));
        let e2 = find(DEdgeKind::Split(2));
        assert_eq!(d.transition(into12, out12), Transition::One);
        assert_eq!(d.transition(into12, out21), Transition::Zero);
        assert_eq!(d.transition(out12, e2), Transition::Entry(1, 2));
        let into23 = find(DEdgeKind::Into(2, 3));
        assert_eq!(d.transition(e2, into23), Transition::One);
        assert_eq!(d.transition(out12, into23), Transition::Zero);
    }

    #[test]
    fn every_nonzero_cycle_uses_a_split_edge() {
        // Without the e(v) edges, D′ has no cycle at all: halves only run
        // from exit copies to joints to entry copies.
        let d = build_dprime(4).unwrap();
        for e in d.edges() {
            if !matches!(e.kind, DEdgeKind::Split(_)) {
                assert!(!matches!(d.vertices()[e.head], DVertex::Exit(_)));
            }
        }
    }
}
