use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::EdgeSet;

/// Largest vertex count for graph-level operations (adjacency fits a `u16`
/// row and the canonical code fits a `u128`).
pub const MAX_VERTICES: usize = 16;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", from = "GraphRepr")]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u16>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl From<SimpleGraph> for GraphRepr {
    fn from(g: SimpleGraph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl From<GraphRepr> for SimpleGraph {
    fn from(r: GraphRepr) -> Self {
        let e: Vec<_> = r.edges.iter().map(|e| (e[0], e[1])).collect();
        SimpleGraph::new(r.n, &e)
    }
}

impl SimpleGraph {
    /// Builds a graph; loops and repeated edges are ignored.
    ///
    /// # Panics
    /// If `n` exceeds [`MAX_VERTICES`] or an endpoint is out of range.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        assert!(n <= MAX_VERTICES, "{n} vertices exceeds {MAX_VERTICES}");
        let mut adj = vec![0u16; n];
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) outside 0..{n}");
            if u != v {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        SimpleGraph { n, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, &[])
    }

    pub fn complete(n: usize) -> Self {
        let e: Vec<_> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        Self::new(n, &e)
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &e)
    }

    pub fn cycle(n: usize) -> Self {
        let mut e: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        e.push((n - 1, 0));
        Self::new(n, &e)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let e: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::new(a + b, &e)
    }

    /// Inverse of [`SimpleGraph::code`]: the labelled graph whose `k`-th
    /// pair in column order `(0,1),(0,2),(1,2),(0,3),...` is read from the
    /// `k`-th most significant of the `C(n,2)` code bits.
    pub fn from_column_mask(n: usize, mask: u128) -> Self {
        let total = n * n.saturating_sub(1) / 2;
        let mut e = Vec::new();
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> (total - 1 - k) & 1 == 1 {
                    e.push((u, v));
                }
                k += 1;
            }
        }
        Self::new(n, &e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adj(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let a = self.adj[v];
        (0..self.n).filter(move |&u| a >> u & 1 == 1)
    }

    /// No isolated vertex.
    pub fn is_nimple(&self) -> bool {
        self.adj.iter().all(|&a| a != 0)
    }

    /// Connected; the graph on zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..self.n {
                if frontier >> v & 1 == 1 {
                    next |= self.adj[v];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// Adds a vertex adjacent to the vertices in `mask`.
    pub fn with_vertex(&self, mask: u16) -> SimpleGraph {
        let mut g = self.clone();
        let v = g.n;
        assert!(v < MAX_VERTICES);
        g.adj.push(mask);
        for u in 0..v {
            if mask >> u & 1 == 1 {
                g.adj[u] |= 1 << v;
            }
        }
        g.n += 1;
        g
    }

    pub fn with_edge(&self, u: usize, v: usize) -> SimpleGraph {
        let mut g = self.clone();
        if u != v {
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        g
    }

    pub fn without_edge(&self, u: usize, v: usize) -> SimpleGraph {
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        g
    }

    /// The graph with vertex `v` mapped to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        let e: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        SimpleGraph::new(self.n, &e)
    }

    /// Adjacency code under the identity labelling: bit `k` (counted from
    /// the most significant end of a `C(n,2)`-bit word) is the `k`-th pair in
    /// column order.
    pub fn code(&self) -> u128 {
        let id: Vec<usize> = (0..self.n).collect();
        self.code_under(&id)
    }

    /// Code of the graph relabelled so that new vertex `i` is old `order[i]`.
    pub fn code_under(&self, order: &[usize]) -> u128 {
        let mut c = 0u128;
        for j in 1..self.n {
            for i in 0..j {
                c = c << 1 | self.has_edge(order[i], order[j]) as u128;
            }
        }
        c
    }

    /// The doubled directed edge set on `1..=n`.
    pub fn doubled(&self) -> EdgeSet {
        let e: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (u as u16 + 1, v as u16 + 1))
            .collect();
        EdgeSet::symmetric(self.n as u16, &e).expect("vertex count within EdgeSet range")
    }

    /// The underlying simple graph of a loop-free edge set, on `1..=dim`
    /// shifted to `0..dim`.
    pub fn from_edge_set(a: &EdgeSet) -> SimpleGraph {
        let e: Vec<_> = a
            .undirected_edges()
            .into_iter()
            .map(|(u, v)| (u as usize - 1, v as usize - 1))
            .collect();
        SimpleGraph::new(a.dim() as usize, &e)
    }

    /// Induced subgraph on the vertices in `mask`, relabelled in order.
    pub fn induced(&self, mask: u16) -> SimpleGraph {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (k, &v) in verts.iter().enumerate() {
            pos[v] = k;
        }
        let e: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|(u, v)| (pos[u], pos[v]))
            .collect();
        SimpleGraph::new(verts.len(), &e)
    }

    /// Removes isolated vertices.
    pub fn without_isolated(&self) -> SimpleGraph {
        let mask = (0..self.n)
            .filter(|&v| self.adj[v] != 0)
            .fold(0u16, |m, v| m | 1 << v);
        self.induced(mask)
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}{:?}", self.n, self.edges())
    }
}

/// Lexicographically least adjacency code over all labellings, and one
/// labelling achieving it (`order[i]` is the old vertex given label `i`).
///
/// Branch and bound: labels are assigned in increasing order, and each new
/// label fixes one more column of the code, so any prefix already larger
/// than the best complete code is abandoned.
pub fn canonical_order(g: &SimpleGraph) -> (u128, Vec<usize>) {
    let n = g.n();
    if n <= 1 {
        return (0, (0..n).collect());
    }
    struct Search<'a> {
        g: &'a SimpleGraph,
        n: usize,
        best: Option<(u128, Vec<usize>)>,
        order: Vec<usize>,
        used: u16,
    }
    impl Search<'_> {
        // `prefix` holds the bits of columns 1..j, `bits` how many.
        fn go(&mut self, prefix: u128, bits: u32) {
            let j = self.order.len();
            if j == self.n {
                if self.best.as_ref().is_none_or(|b| prefix < b.0) {
                    self.best = Some((prefix, self.order.clone()));
                }
                return;
            }
            for v in 0..self.n {
                if self.used >> v & 1 == 1 {
                    continue;
                }
                let mut p = prefix;
                for i in 0..j {
                    p = p << 1 | self.g.has_edge(self.order[i], v) as u128;
                }
                let nb = bits + j as u32;
                if let Some((best, _)) = &self.best {
                    let total = (self.n * (self.n - 1) / 2) as u32;
                    let best_prefix = best >> (total - nb);
                    if p > best_prefix {
                        continue;
                    }
                }
                self.order.push(v);
                self.used |= 1 << v;
                self.go(p, nb);
                self.used &= !(1 << v);
                self.order.pop();
            }
        }
    }
    let mut s = Search {
        g,
        n,
        best: None,
        order: Vec::with_capacity(n),
        used: 0,
    };
    s.go(0, 0);
    s.best.expect("at least one labelling")
}

/// The canonical representative: the labelling with least code.
pub fn canonical_form(g: &SimpleGraph) -> SimpleGraph {
    let (_, order) = canonical_order(g);
    let mut perm = vec![0; g.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    g.relabel(&perm)
}

pub fn canonical_code(g: &SimpleGraph) -> u128 {
    canonical_order(g).0
}

/// All automorphisms as vertex maps `perm[v]`.
pub fn automorphisms(g: &SimpleGraph) -> Vec<Vec<usize>> {
    fn go(
        g: &SimpleGraph,
        perm: &mut Vec<usize>,
        used: u16,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = perm.len();
        if v == g.n() {
            out.push(perm.clone());
            return;
        }
        for w in 0..g.n() {
            if used >> w & 1 == 1 || g.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(perm[u], w)) {
                perm.push(w);
                go(g, perm, used | 1 << w, out);
                perm.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut Vec::with_capacity(g.n()), 0, &mut out);
    out
}

pub fn automorphism_order(g: &SimpleGraph) -> u64 {
    automorphisms(g).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_canonical(g: &SimpleGraph) -> u128 {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for k in 0..n {
                    let mut q = p.clone();
                    q.insert(k, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(g.n()).iter().map(|o| g.code_under(o)).min().unwrap()
    }

    #[test]
    fn canonical_matches_brute_force() {
        for n in 1..=5 {
            let pairs = n * (n - 1) / 2;
            for mask in 0..1u128 << pairs {
                let g = SimpleGraph::from_column_mask(n, mask);
                let (code, _) = canonical_order(&g);
                assert_eq!(code, brute_canonical(&g));
                assert_eq!(canonical_form(&g).code(), code);
            }
        }
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_order(&SimpleGraph::complete(3)), 6);
        assert_eq!(automorphism_order(&SimpleGraph::path(3)), 2);
        assert_eq!(automorphism_order(&SimpleGraph::complete(2)), 2);
        assert_eq!(automorphism_order(&SimpleGraph::cycle(4)), 8);
        assert_eq!(automorphism_order(&SimpleGraph::complete_bipartite(3, 3)), 72);
        assert_eq!(automorphism_order(&SimpleGraph::empty(0)), 1);
    }

    #[test]
    fn orbit_stabilizer_n4() {
        use std::collections::HashMap;
        let mut copies: HashMap<u128, u64> = HashMap::new();
        for mask in 0..1u128 << 6 {
            *copies.entry(canonical_code(&SimpleGraph::from_column_mask(4, mask))).or_default() += 1;
        }
        assert_eq!(copies.len(), 11);
        for (code, c) in copies {
            let g = SimpleGraph::from_column_mask(4, code);
            assert_eq!(c * automorphism_order(&g), 24);
        }
    }

    #[test]
    fn serde_round_trip() {
        let g = SimpleGraph::path(3);
        let j = serde_json::to_string(&g).unwrap();
        assert_eq!(j, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<SimpleGraph>(&j).unwrap(), g);
    }
}
