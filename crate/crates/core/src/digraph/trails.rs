use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::{is_eulerian, EdgeSet};

/// A closed trail stored in its lexicographically least rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct ClosedTrail(Vec<(u16, u16)>);

impl ClosedTrail {
    /// Accepts a head-to-tail consistent circular edge sequence with
    /// distinct edges.
    pub fn new(edges: Vec<(u16, u16)>) -> Option<Self> {
        let k = edges.len();
        if k == 0 {
            return None;
        }
        for t in 0..k {
            if edges[t].1 != edges[(t + 1) % k].0 {
                return None;
            }
        }
        let distinct: HashSet<_> = edges.iter().collect();
        if distinct.len() != k {
            return None;
        }
        Some(ClosedTrail(least_rotation(&edges)))
    }

    pub fn edges(&self) -> &[(u16, u16)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No vertex is visited twice.
    pub fn is_vertex_simple(&self) -> bool {
        let tails: HashSet<u16> = self.0.iter().map(|e| e.0).collect();
        tails.len() == self.0.len()
    }
}

pub(crate) fn least_rotation<T: Ord + Clone>(s: &[T]) -> Vec<T> {
    (0..s.len())
        .map(|r| s[r..].iter().chain(&s[..r]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Memo table for [`TrailMemo::r_values`], shareable across many sets.
#[derive(Default)]
pub struct TrailMemo {
    memo: HashMap<EdgeSet, u128>,
}

impl TrailMemo {
    pub fn new() -> Self {
        Self::default()
    }

    /// Bitmask of the `r` for which `q` splits into exactly `r` edge-disjoint
    /// nonempty closed trails; bit 0 alone for `q = ∅`, 0 when `q` is not
    /// eulerian.
    pub fn r_values(&mut self, q: &EdgeSet) -> u128 {
        if q.is_empty() {
            return 1;
        }
        if !is_eulerian(q) {
            return 0;
        }
        self.eulerian_r_values(q)
    }

    fn eulerian_r_values(&mut self, q: &EdgeSet) -> u128 {
        if q.is_empty() {
            return 1;
        }
        if let Some(&v) = self.memo.get(q) {
            return v;
        }
        let mut mask = 0u128;
        for trail in trails_through_first(q) {
            mask |= self.eulerian_r_values(&q.minus(&trail)) << 1;
        }
        self.memo.insert(*q, mask);
        mask
    }
}

/// Edge sets of all closed trails in `q` that use its least edge.
fn trails_through_first(q: &EdgeSet) -> Vec<EdgeSet> {
    let Some((a, b)) = q.first() else {
        return Vec::new();
    };
    let mut used = EdgeSet::empty(q.dim());
    used.insert(a, b);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    walk(q, a, b, &mut used, &mut seen, &mut out);
    out
}

fn walk(
    q: &EdgeSet,
    start: u16,
    cur: u16,
    used: &mut EdgeSet,
    seen: &mut HashSet<EdgeSet>,
    out: &mut Vec<EdgeSet>,
) {
    if cur == start && seen.insert(*used) {
        out.push(*used);
    }
    for next in 1..=q.dim() {
        if q.contains(cur, next) && !used.contains(cur, next) {
            used.insert(cur, next);
            walk(q, start, next, used, seen, out);
            used.remove(cur, next);
        }
    }
}

/// The set of `r` admitting a partition of `q` into `r` closed trails;
/// `{0}` for the empty set and `∅` for a non-eulerian set.
pub fn trail_decomposition_r_values(q: &EdgeSet) -> BTreeSet<usize> {
    mask_to_set(TrailMemo::new().r_values(q))
}

pub(crate) fn mask_to_set(mask: u128) -> BTreeSet<usize> {
    (0..128).filter(|r| mask >> r & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn examples() {
        let pair = EdgeSet::from_edges(3, &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(trail_decomposition_r_values(&pair), set(&[1]));
        let tri = EdgeSet::symmetric(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(trail_decomposition_r_values(&tri), set(&[1, 2, 3]));
        let one = EdgeSet::from_edges(3, &[(1, 2)]).unwrap();
        assert!(trail_decomposition_r_values(&one).is_empty());
        assert_eq!(trail_decomposition_r_values(&EdgeSet::empty(3)), set(&[0]));
    }

    #[test]
    fn two_triangles_sharing_a_vertex() {
        // A bowtie of directed triangles: one trail (figure eight) or two.
        let q = EdgeSet::from_edges(5, &[(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)]).unwrap();
        assert_eq!(trail_decomposition_r_values(&q), set(&[1, 2]));
    }

    #[test]
    fn canonical_rotation() {
        let t = ClosedTrail::new(vec![(2, 3), (3, 1), (1, 2)]).unwrap();
        assert_eq!(t.edges(), &[(1, 2), (2, 3), (3, 1)]);
        assert!(t.is_vertex_simple());
        assert!(ClosedTrail::new(vec![(1, 2), (3, 1)]).is_none());
        assert!(ClosedTrail::new(vec![(1, 2), (2, 1), (1, 2), (2, 1)]).is_none());
    }
}
