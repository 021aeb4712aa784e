use std::collections::HashMap;

use serde::Serialize;

use super::trails::ClosedTrail;
use super::EdgeSet;

/// An unordered partition of a carrier into vertex-simple directed cycles,
/// cycles sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CycleDecomposition {
    pub cycles: Vec<ClosedTrail>,
}

/// Vertex-simple cycles through edge `(a, b)` within `avail`, as vertex
/// sequences starting at `a`.
fn cycles_through(avail: &EdgeSet, a: u16, b: u16, min_len: usize) -> Vec<Vec<u16>> {
    fn go(
        avail: &EdgeSet,
        a: u16,
        path: &mut Vec<u16>,
        visited: &mut u32,
        min_len: usize,
        out: &mut Vec<Vec<u16>>,
    ) {
        let cur = *path.last().unwrap();
        for next in 1..=avail.dim() {
            if !avail.contains(cur, next) {
                continue;
            }
            if next == a {
                if path.len() >= min_len {
                    out.push(path.clone());
                }
            } else if *visited >> next & 1 == 0 {
                *visited |= 1 << next;
                path.push(next);
                go(avail, a, path, visited, min_len, out);
                path.pop();
                *visited &= !(1 << next);
            }
        }
    }
    let mut out = Vec::new();
    if a == b {
        return out;
    }
    let mut path = vec![a, b];
    let mut visited = (1u32 << a) | (1u32 << b);
    go(avail, a, &mut path, &mut visited, min_len, &mut out);
    out
}

fn cycle_edges(dim: u16, verts: &[u16]) -> EdgeSet {
    let mut s = EdgeSet::empty(dim);
    for t in 0..verts.len() {
        s.insert(verts[t], verts[(t + 1) % verts.len()]);
    }
    s
}

fn cycle_trail(verts: &[u16]) -> ClosedTrail {
    let k = verts.len();
    ClosedTrail::new((0..k).map(|t| (verts[t], verts[(t + 1) % k])).collect())
        .expect("a vertex-simple cycle is a closed trail")
}

/// Every vertex-simple directed cycle of `D(n)` of length at least `min_len`
/// (at least 2), ordered by length and then lexicographically.
pub fn directed_cycles(n: u16, min_len: usize) -> Vec<ClosedTrail> {
    let full = {
        let mut s = EdgeSet::empty(n);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    s.insert(i, j);
                }
            }
        }
        s
    };
    let mut out = Vec::new();
    for a in 1..=n {
        // Restrict to vertices ≥ a so each cycle starts at its least vertex.
        let mut avail = full;
        for i in 1..a {
            for j in 1..=n {
                if i != j {
                    avail.remove(i, j);
                    avail.remove(j, i);
                }
            }
        }
        for b in a + 1..=n {
            for verts in cycles_through(&avail, a, b, min_len.max(2)) {
                out.push(cycle_trail(&verts));
            }
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

/// All partitions of `q` into vertex-simple directed cycles of length at
/// least `min_len`, found by always covering the least unused edge next.
pub fn enumerate_cycle_decompositions(q: &EdgeSet, min_len: usize) -> Vec<CycleDecomposition> {
    fn go(
        rest: &EdgeSet,
        min_len: usize,
        cur: &mut Vec<ClosedTrail>,
        out: &mut Vec<CycleDecomposition>,
    ) {
        let Some((a, b)) = rest.first() else {
            let mut cycles = cur.clone();
            cycles.sort();
            out.push(CycleDecomposition { cycles });
            return;
        };
        for verts in cycles_through(rest, a, b, min_len) {
            cur.push(cycle_trail(&verts));
            go(&rest.minus(&cycle_edges(rest.dim(), &verts)), min_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(q, min_len, &mut Vec::new(), &mut out);
    out
}

/// Number of cycle decompositions, memoized on the remaining edge set.
pub fn count_cycle_decompositions(q: &EdgeSet, min_len: usize) -> u64 {
    fn go(rest: &EdgeSet, min_len: usize, memo: &mut HashMap<EdgeSet, u64>) -> u64 {
        let Some((a, b)) = rest.first() else {
            return 1;
        };
        if let Some(&c) = memo.get(rest) {
            return c;
        }
        let mut total = 0;
        for verts in cycles_through(rest, a, b, min_len) {
            total += go(&rest.minus(&cycle_edges(rest.dim(), &verts)), min_len, memo);
        }
        memo.insert(*rest, total);
        total
    }
    go(q, min_len, &mut HashMap::new())
}

/// Decomposable into edge-disjoint directed cycles of length ≥ 3. The empty
/// set is even.
pub fn is_even(q: &EdgeSet) -> bool {
    count_cycle_decompositions(q, 3) > 0
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_eulerian, is_eulerian};
    use super::*;

    #[test]
    fn examples() {
        let tri2 = EdgeSet::symmetric(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let d = enumerate_cycle_decompositions(&tri2, 3);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].cycles.len(), 2);
        let pair = EdgeSet::from_edges(3, &[(1, 2), (2, 1)]).unwrap();
        assert!(enumerate_cycle_decompositions(&pair, 3).is_empty());
        let tri = EdgeSet::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(enumerate_cycle_decompositions(&tri, 3).len(), 1);
        assert!(is_even(&tri2) && !is_even(&pair) && is_even(&EdgeSet::empty(3)));
    }

    #[test]
    fn cycle_counts() {
        // K_n has Σ_k C(n,k)(k-1)! directed cycles of length ≥ 3.
        assert_eq!(directed_cycles(3, 3).len(), 2);
        assert_eq!(directed_cycles(4, 3).len(), 4 * 2 + 6);
        assert_eq!(directed_cycles(5, 3).len(), 74);
        assert_eq!(directed_cycles(3, 2).len(), 3 + 2);
    }

    #[test]
    fn even_implies_eulerian_n3() {
        let n = 3;
        for a in enumerate_eulerian(n, 6) {
            let count = count_cycle_decompositions(&a, 3);
            assert_eq!(count as usize, enumerate_cycle_decompositions(&a, 3).len());
        }
        // Exhaustive over all loop-free subsets.
        let edges: Vec<(u16, u16)> = (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..1 << edges.len() {
            let sel: Vec<_> = (0..edges.len()).filter(|b| mask >> b & 1 == 1).map(|b| edges[b]).collect();
            let s = EdgeSet::from_edges(n, &sel).unwrap();
            if is_even(&s) {
                assert!(is_eulerian(&s));
            }
        }
    }
}
