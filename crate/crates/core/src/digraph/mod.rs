//! Edge subsets of the complete digraph on `N` vertices: eulerian and even
//! sets, weak components, closed-trail and cycle decompositions.

mod cycles;
mod eulerian;
mod trails;

pub use cycles::{
    count_cycle_decompositions, directed_cycles, enumerate_cycle_decompositions, is_even,
    CycleDecomposition,
};
pub use eulerian::{enumerate_eulerian, enumerate_eulerian_with, for_each_eulerian, EulerianFilter};
pub use trails::{trail_decomposition_r_values, ClosedTrail, TrailMemo};
pub(crate) use trails::least_rotation;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Monomial, Var};
use crate::error::{Error, Result};

/// Largest supported dimension: `16² = 256` edge bits.
pub const MAX_DIM: u16 = 16;

/// A subset of the `N²` directed edges `(i, j)` of the complete digraph,
/// 1-based. Bit `(i-1)·N + (j-1)` marks edge `(i, j)`, so iteration order is
/// lexicographic in `(i, j)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    dim: u16,
    bits: [u64; 4],
}

impl EdgeSet {
    pub fn empty(dim: u16) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        EdgeSet { dim, bits: [0; 4] }
    }

    pub fn from_edges(dim: u16, edges: &[(u16, u16)]) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::ScaleExceeded {
                what: "dimension",
                limit: MAX_DIM as usize,
                got: dim as usize,
            });
        }
        let mut s = Self::empty(dim);
        for &(i, j) in edges {
            if i == 0 || j == 0 || i > dim || j > dim {
                return Err(Error::IndexOutOfRange(i, j, dim));
            }
            s.insert(i, j);
        }
        Ok(s)
    }

    /// The doubled edge set `{(u,v),(v,u)}` of an undirected edge list.
    pub fn symmetric(dim: u16, edges: &[(u16, u16)]) -> Result<Self> {
        let both: Vec<_> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Self::from_edges(dim, &both)
    }

    pub fn dim(&self) -> u16 {
        self.dim
    }

    #[inline]
    pub fn bit(&self, i: u16, j: u16) -> usize {
        (i as usize - 1) * self.dim as usize + (j as usize - 1)
    }

    #[inline]
    pub fn edge_of_bit(&self, b: usize) -> (u16, u16) {
        let n = self.dim as usize;
        ((b / n) as u16 + 1, (b % n) as u16 + 1)
    }

    #[inline]
    pub fn contains(&self, i: u16, j: u16) -> bool {
        let b = self.bit(i, j);
        self.bits[b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: u16, j: u16) {
        let b = self.bit(i, j);
        self.bits[b / 64] |= 1 << (b % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: u16, j: u16) {
        let b = self.bit(i, j);
        self.bits[b / 64] &= !(1 << (b % 64));
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == [0; 4]
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        for k in 0..4 {
            out.bits[k] |= other.bits[k];
        }
        out
    }

    pub fn minus(&self, other: &EdgeSet) -> EdgeSet {
        let mut out = *self;
        for k in 0..4 {
            out.bits[k] &= !other.bits[k];
        }
        out
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        (0..4).all(|k| self.bits[k] & other.bits[k] == 0)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        (0..4).all(|k| self.bits[k] & !other.bits[k] == 0)
    }

    /// Edges in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (u16, u16)> + '_ {
        (0..4).flat_map(move |k| {
            let mut w = self.bits[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(self.edge_of_bit(k * 64 + t))
            })
        })
    }

    /// The lexicographically least edge.
    pub fn first(&self) -> Option<(u16, u16)> {
        self.iter().next()
    }

    pub fn has_loop(&self) -> bool {
        (1..=self.dim).any(|i| self.contains(i, i))
    }

    /// Whether `(j, i)` is present for every `(i, j)`.
    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|(i, j)| self.contains(j, i))
    }

    /// In- minus out-degree at each vertex (index 0 is vertex 1).
    pub fn imbalance(&self) -> Vec<i32> {
        let mut d = vec![0i32; self.dim as usize];
        for (i, j) in self.iter() {
            d[i as usize - 1] -= 1;
            d[j as usize - 1] += 1;
        }
        d
    }

    /// Bitmask of vertices touched by some edge (bit `v-1` for vertex `v`).
    pub fn support(&self) -> u32 {
        self.iter()
            .fold(0u32, |acc, (i, j)| acc | 1 << (i - 1) | 1 << (j - 1))
    }

    /// `∏_{e∈A} M_e`.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_pairs_unchecked(self.iter().map(|(i, j)| (Var::Entry(i, j), 1)))
    }

    /// Relabels vertices by `perm` (1-based images, `perm[v-1]`) into a set
    /// of dimension `dim`.
    pub fn relabel(&self, dim: u16, perm: &[u16]) -> EdgeSet {
        let mut out = EdgeSet::empty(dim);
        for (i, j) in self.iter() {
            out.insert(perm[i as usize - 1], perm[j as usize - 1]);
        }
        out
    }

    /// The undirected simple graph underlying a loop-free set, as pairs
    /// `u < v`.
    pub fn undirected_edges(&self) -> Vec<(u16, u16)> {
        let mut out: Vec<_> = self
            .iter()
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| (i.min(j), i.max(j)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// In-degree equals out-degree at every vertex.
pub fn is_eulerian(a: &EdgeSet) -> bool {
    a.imbalance().iter().all(|&d| d == 0)
}

/// Maximal edge classes whose underlying undirected graph is connected,
/// ordered by least edge.
pub fn components(a: &EdgeSet) -> Vec<EdgeSet> {
    let n = a.dim as usize;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (i, j) in a.iter() {
        let (ri, rj) = (find(&mut parent, i as usize - 1), find(&mut parent, j as usize - 1));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut by_root: Vec<Option<usize>> = vec![None; n];
    let mut out: Vec<EdgeSet> = Vec::new();
    for (i, j) in a.iter() {
        let r = find(&mut parent, i as usize - 1);
        let k = *by_root[r].get_or_insert_with(|| {
            out.push(EdgeSet::empty(a.dim));
            out.len() - 1
        });
        out[k].insert(i, j);
    }
    out
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet[{}]", self.dim)?;
        f.debug_list().entries(self.iter()).finish()
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[u16; 2]> = self.iter().map(|(i, j)| [i, j]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<[u16; 2]> = Vec::deserialize(d)?;
        let dim = v.iter().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        let edges: Vec<_> = v.iter().map(|e| (e[0], e[1])).collect();
        EdgeSet::from_edges(dim, &edges).map_err(serde::de::Error::custom)
    }
}
