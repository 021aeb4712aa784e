//! Unpointed closed walks of `D′` and their rotation numbers.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Transition, TransitionDigraph};
use crate::algebra::{Monomial, Var};
use crate::digraph::least_rotation;
use crate::error::{check_scale, Result};

/// A circular sequence of `D′` edges in its least rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ClosedWalkD {
    edges: Vec<usize>,
}

fn smallest_period(s: &[usize]) -> usize {
    (1..=s.len())
        .find(|&p| s.len().is_multiple_of(p) && (p..s.len()).all(|i| s[i] == s[i - p]))
        .unwrap_or(0)
}

impl ClosedWalkD {
    /// Accepts a head-to-tail consistent circular sequence.
    pub fn new(dp: &TransitionDigraph, edges: Vec<usize>) -> Option<Self> {
        let k = edges.len();
        if k == 0 || edges.iter().any(|&e| e >= dp.edges().len()) {
            return None;
        }
        for t in 0..k {
            if dp.edges()[edges[t]].head != dp.edges()[edges[(t + 1) % k]].tail {
                return None;
            }
        }
        Some(ClosedWalkD {
            edges: least_rotation(&edges),
        })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Not a proper power of a shorter walk.
    pub fn is_aperiodic(&self) -> bool {
        smallest_period(&self.edges) == self.edges.len()
    }

    /// Product of transition weights, or `None` when some transition
    /// weighs zero.
    pub fn weight(&self, dp: &TransitionDigraph) -> Option<Monomial> {
        let k = self.edges.len();
        let mut exps: BTreeMap<Var, i32> = BTreeMap::new();
        for t in 0..k {
            match dp.transition(self.edges[t], self.edges[(t + 1) % k]) {
                Transition::Zero => return None,
                Transition::One => {}
                Transition::Entry(u, v) => *exps.entry(Var::Entry(u, v)).or_insert(0) += 1,
            }
        }
        Some(Monomial::from_pairs_unchecked(exps))
    }

    /// Number of matrix entries in the weight.
    pub fn m_degree(&self, dp: &TransitionDigraph) -> usize {
        let k = self.edges.len();
        (0..k)
            .filter(|&t| dp.transition_var(self.edges[t], self.edges[(t + 1) % k]).is_some())
            .count()
    }

    /// The arcs `u→v` of the complete digraph traversed, in walk order.
    pub fn arcs(&self, dp: &TransitionDigraph) -> Vec<(u16, u16)> {
        self.edges
            .iter()
            .filter_map(|&e| match dp.edges()[e].kind {
                super::DEdgeKind::Into(u, v) => Some((u, v)),
                _ => None,
            })
            .collect()
    }
}

/// Every aperiodic closed walk of nonzero weight with at most
/// `max_m_degree` matrix entries, sorted by degree then edge sequence.
pub fn enumerate_aperiodic_walks(
    dp: &TransitionDigraph,
    max_m_degree: usize,
) -> Result<Vec<ClosedWalkD>> {
    check_scale("M-degree of closed walks", max_m_degree, 8)?;
    let mut found = BTreeSet::new();
    let starts: Vec<usize> = (0..dp.edges().len()).filter(|&e| dp.is_split_edge(e)).collect();
    for &s in &starts {
        let mut path = vec![s];
        extend(dp, s, max_m_degree, 0, &mut path, &mut found);
    }
    let mut walks: Vec<ClosedWalkD> = found.into_iter().filter(|w: &ClosedWalkD| w.is_aperiodic()).collect();
    walks.sort_by_cached_key(|w| (w.m_degree(dp), w.clone()));
    Ok(walks)
}

fn extend(
    dp: &TransitionDigraph,
    start: usize,
    max_degree: usize,
    degree: usize,
    path: &mut Vec<usize>,
    found: &mut BTreeSet<ClosedWalkD>,
) {
    let cur = *path.last().unwrap();
    let head = dp.edges()[cur].head;
    for &b in dp.out_edges(head) {
        let step = match dp.transition(cur, b) {
            Transition::Zero => continue,
            Transition::One => 0,
            Transition::Entry(..) => 1,
        };
        if degree + step > max_degree {
            continue;
        }
        if b == start {
            found.insert(ClosedWalkD {
                edges: least_rotation(path),
            });
        }
        path.push(b);
        extend(dp, start, max_degree, degree + step, path, found);
        path.pop();
    }
}

/// Where to cut a walk that repeats its least repeated edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub enum SplitRule {
    /// Between the first two occurrences along the least rotation.
    #[default]
    FirstTwo,
    /// Between the last two occurrences along the least rotation.
    LastTwo,
}

/// Rotation number `ρ(w) ∈ {-1, 0, 1}` of a nonzero-weight closed walk.
pub fn rotation_number(dp: &TransitionDigraph, w: &ClosedWalkD, rule: SplitRule) -> i32 {
    rho(dp, &w.edges, rule)
}

fn rho(dp: &TransitionDigraph, w: &[usize], rule: SplitRule) -> i32 {
    let mut positions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let c = least_rotation(w);
    for (i, &e) in c.iter().enumerate() {
        positions.entry(e).or_default().push(i);
    }
    let repeated = positions.iter().find(|(_, p)| p.len() >= 2);
    let Some((&a, pos)) = repeated else {
        let tails: BTreeSet<usize> = c.iter().map(|&e| dp.edges()[e].tail).collect();
        // No repeated edge: a cycle, or a walk passing a joint twice
        // (a 2-cycle u→v→u).
        return if tails.len() == c.len() { -1 } else { 0 };
    };
    if dp.is_split_edge(a) {
        return 0;
    }
    let (i, j) = match rule {
        SplitRule::FirstTwo => (pos[0], pos[1]),
        SplitRule::LastTwo => (pos[pos.len() - 2], pos[pos.len() - 1]),
    };
    let w1 = &c[i..j];
    let w2: Vec<usize> = c[j..].iter().chain(&c[..i]).copied().collect();
    rho(dp, w1, rule) * rho(dp, &w2, rule)
}
