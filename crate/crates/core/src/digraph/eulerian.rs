use super::EdgeSet;

/// Restrictions on [`enumerate_eulerian_with`].
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct EulerianFilter {
    /// Every vertex `1..=N` must be incident to some edge.
    pub full_support: bool,
    /// Only sets closed under reversal (the only ones with a proper pairing).
    pub symmetric_only: bool,
}

/// Every loop-free eulerian subset of `D(N)` with at most `max_edges` edges,
/// each once, in a fixed order (the empty set first).
pub fn enumerate_eulerian(n: u16, max_edges: usize) -> Vec<EdgeSet> {
    enumerate_eulerian_with(n, max_edges, EulerianFilter::default())
}

pub fn enumerate_eulerian_with(n: u16, max_edges: usize, filter: EulerianFilter) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    for_each_eulerian(n, max_edges, filter, |a| out.push(*a));
    out
}

/// Visitor form of [`enumerate_eulerian_with`].
///
/// Edges are scanned grouped by their smaller endpoint, so once group `v` is
/// decided no later edge touches `v` and its balance can be checked.
pub fn for_each_eulerian(
    n: u16,
    max_edges: usize,
    filter: EulerianFilter,
    mut visit: impl FnMut(&EdgeSet),
) {
    // Undirected slots (v, w), v < w, in group order.
    let slots: Vec<(u16, u16)> = (1..=n)
        .flat_map(|v| (v + 1..=n).map(move |w| (v, w)))
        .collect();
    let mut st = State {
        n,
        max_edges,
        filter,
        slots,
        set: EdgeSet::empty(n),
        imb: vec![0; n as usize + 1],
        deg: vec![0; n as usize + 1],
    };
    if n == 0 {
        visit(&st.set);
        return;
    }
    st.go(0, &mut visit);
}

struct State {
    n: u16,
    max_edges: usize,
    filter: EulerianFilter,
    slots: Vec<(u16, u16)>,
    set: EdgeSet,
    imb: Vec<i32>,
    deg: Vec<u32>,
}

impl State {
    /// Checks every vertex whose incident slots are all decided before
    /// position `k`.
    fn closed_vertices_ok(&self, k: usize) -> bool {
        let prev = if k == 0 { 0 } else { self.slots[k - 1].0 };
        let next = self.slots.get(k).map_or(self.n + 1, |s| s.0);
        // Vertices prev..next (exclusive of next) are now closed.
        (prev.max(1)..next).all(|v| self.vertex_ok(v))
    }

    fn vertex_ok(&self, v: u16) -> bool {
        self.imb[v as usize] == 0 && (!self.filter.full_support || self.deg[v as usize] > 0)
    }

    /// The current group's remaining slots must be able to repair the
    /// imbalance at its pivot vertex.
    fn pivot_repairable(&self, k: usize) -> bool {
        let Some(&(v, w)) = self.slots.get(k) else {
            return true;
        };
        let remaining = (self.n - w + 1) as i32;
        self.imb[v as usize].abs() <= remaining
    }

    fn toggle(&mut self, i: u16, j: u16, on: bool) {
        let d = if on { 1 } else { -1 };
        if on {
            self.set.insert(i, j);
        } else {
            self.set.remove(i, j);
        }
        self.imb[i as usize] -= d;
        self.imb[j as usize] += d;
        self.deg[i as usize] = (self.deg[i as usize] as i32 + d) as u32;
        self.deg[j as usize] = (self.deg[j as usize] as i32 + d) as u32;
    }

    fn go(&mut self, k: usize, visit: &mut impl FnMut(&EdgeSet)) {
        if k > 0
            && (k == self.slots.len() || self.slots[k].0 != self.slots[k - 1].0)
            && !self.closed_vertices_ok(k)
        {
            return;
        }
        if k == self.slots.len() {
            if k == 0 && !(1..=self.n).all(|v| self.vertex_ok(v)) {
                return;
            }
            visit(&self.set);
            return;
        }
        if !self.pivot_repairable(k) {
            return;
        }
        let (v, w) = self.slots[k];
        let len = self.set.len();
        let choices: &[(bool, bool)] = if self.filter.symmetric_only {
            &[(false, false), (true, true)]
        } else {
            &[(false, false), (true, false), (false, true), (true, true)]
        };
        for &(fwd, back) in choices {
            let add = fwd as usize + back as usize;
            if len + add > self.max_edges {
                continue;
            }
            if fwd {
                self.toggle(v, w, true);
            }
            if back {
                self.toggle(w, v, true);
            }
            self.go(k + 1, visit);
            if fwd {
                self.toggle(v, w, false);
            }
            if back {
                self.toggle(w, v, false);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::is_eulerian;
    use super::*;

    fn brute(n: u16, max: usize, filter: EulerianFilter) -> Vec<EdgeSet> {
        let edges: Vec<(u16, u16)> = (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << edges.len() {
            if mask.count_ones() as usize > max {
                continue;
            }
            let mut s = EdgeSet::empty(n);
            for (b, &(i, j)) in edges.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    s.insert(i, j);
                }
            }
            if !is_eulerian(&s) {
                continue;
            }
            if filter.symmetric_only && !s.is_symmetric() {
                continue;
            }
            if filter.full_support && s.support() != (1u32 << n) - 1 {
                continue;
            }
            out.push(s);
        }
        out.sort();
        out
    }

    fn sorted(mut v: Vec<EdgeSet>) -> Vec<EdgeSet> {
        v.sort();
        v
    }

    #[test]
    fn matches_brute_force() {
        for n in 1..=3u16 {
            for max in 0..=6 {
                for full_support in [false, true] {
                    for symmetric_only in [false, true] {
                        let f = EulerianFilter {
                            full_support,
                            symmetric_only,
                        };
                        assert_eq!(
                            sorted(enumerate_eulerian_with(n, max, f)),
                            brute(n, max, f),
                            "n={n} max={max} {f:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn matches_brute_force_n4() {
        for max in [4, 6, 8] {
            let f = EulerianFilter::default();
            assert_eq!(sorted(enumerate_eulerian_with(4, max, f)), brute(4, max, f));
        }
    }

    #[test]
    fn small_examples() {
        let two = enumerate_eulerian(2, 2);
        assert_eq!(two.len(), 2);
        assert!(two[0].is_empty());
        assert_eq!(enumerate_eulerian(3, 2).len(), 4);
        let six = enumerate_eulerian(3, 6);
        let tri = EdgeSet::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let rev = EdgeSet::from_edges(3, &[(2, 1), (3, 2), (1, 3)]).unwrap();
        assert!(six.contains(&tri) && six.contains(&rev) && six.contains(&tri.union(&rev)));
    }
}
