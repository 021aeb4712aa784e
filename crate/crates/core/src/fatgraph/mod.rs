//! Fat graphs (maps) as rotation systems: a permutation `σ` whose cycles are
//! the cyclic orders of half-edges at the vertices, and a fixed-point-free
//! involution `α` pairing half-edges into edges.
//!
//! Faces are the orbits of `φ = σ∘α`: from a half-edge, cross its edge, then
//! turn to the next half-edge around the vertex reached.

mod maps;
mod relevant;

use serde::Serialize;

use crate::census::SimpleGraph;
use crate::error::{Error, Result};

pub use maps::{for_each_pairing, map_count, map_counts, verify_bipz, BipzCheck, BipzMismatch};
pub use relevant::{
    enumerate_relevant, for_each_fat_graph, realized_graphs, rhs_main3, RelevantClass,
    RelevantPair, MAX_RELEVANT_EDGES,
};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FatGraph {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
}

fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut h = s;
        while !seen[h] {
            seen[h] = true;
            cyc.push(h);
            h = perm[h];
        }
        out.push(cyc);
    }
    out
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

impl FatGraph {
    pub fn new(sigma: Vec<usize>, alpha: Vec<usize>) -> Result<Self> {
        if sigma.len() != alpha.len() {
            return Err(Error::InvalidFatGraph("σ and α act on different sets".into()));
        }
        if !is_permutation(&sigma) || !is_permutation(&alpha) {
            return Err(Error::InvalidFatGraph("σ and α must be permutations".into()));
        }
        if (0..alpha.len()).any(|h| alpha[h] == h || alpha[alpha[h]] != h) {
            return Err(Error::InvalidFatGraph("α must be a fixed-point-free involution".into()));
        }
        Ok(FatGraph { sigma, alpha })
    }

    /// Vertices given as cyclic lists of half-edges.
    pub fn from_rotations(rotations: &[Vec<usize>], alpha: Vec<usize>) -> Result<Self> {
        let mut sigma = vec![usize::MAX; alpha.len()];
        for rot in rotations {
            for (t, &h) in rot.iter().enumerate() {
                if h >= sigma.len() || sigma[h] != usize::MAX {
                    return Err(Error::InvalidFatGraph(format!("half-edge {h} misplaced")));
                }
                sigma[h] = rot[(t + 1) % rot.len()];
            }
        }
        if sigma.contains(&usize::MAX) {
            return Err(Error::InvalidFatGraph("a half-edge has no vertex".into()));
        }
        FatGraph::new(sigma, alpha)
    }

    /// Vertex `i` owns the next `degrees[i]` half-edges in increasing cyclic
    /// order.
    pub fn standard(degrees: &[usize], alpha: Vec<usize>) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(Error::InvalidFatGraph("vertices need at least one half-edge".into()));
        }
        FatGraph::new(standard_rotation(degrees), alpha)
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn half_edge_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.len() / 2
    }

    /// Vertices as cycles of `σ`, ordered by least half-edge.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        orbits(&self.sigma)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn face_permutation(&self) -> Vec<usize> {
        (0..self.sigma.len()).map(|h| self.sigma[self.alpha[h]]).collect()
    }

    /// Boundary walks as cycles of half-edges, ordered by least half-edge.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        orbits(&self.face_permutation())
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    pub fn component_count(&self) -> usize {
        let m = self.sigma.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for h in 0..m {
            for g in [self.sigma[h], self.alpha[h]] {
                let (a, b) = (find(&mut parent, h), find(&mut parent, g));
                parent[a] = b;
            }
        }
        (0..m).filter(|&h| find(&mut parent, h) == h).count()
    }

    /// Genus from `2g = 2c + e - v - f`.
    pub fn genus(&self) -> Result<u32> {
        let twice = 2 * self.component_count() as i64 + self.edge_count() as i64
            - self.vertex_count() as i64
            - self.face_count() as i64;
        if twice % 2 != 0 || twice < 0 {
            return Err(Error::OddEulerDefect(twice));
        }
        Ok((twice / 2) as u32)
    }

    /// Places `other` beside `self`, shifting its half-edges.
    pub fn disjoint_union(&self, other: &FatGraph) -> FatGraph {
        let k = self.sigma.len();
        let shift = |p: &[usize]| p.iter().map(|&x| x + k).collect::<Vec<_>>();
        let mut sigma = self.sigma.clone();
        sigma.extend(shift(&other.sigma));
        let mut alpha = self.alpha.clone();
        alpha.extend(shift(&other.alpha));
        FatGraph { sigma, alpha }
    }

    /// The dual: one vertex per face, and per edge `{h, α(h)}` an edge
    /// joining the faces through `h` and `α(h)`.
    pub fn dual(&self) -> Multigraph {
        let faces = self.faces();
        let mut face_of = vec![0; self.sigma.len()];
        for (f, cyc) in faces.iter().enumerate() {
            for &h in cyc {
                face_of[h] = f;
            }
        }
        let edges = (0..self.sigma.len())
            .filter(|&h| h < self.alpha[h])
            .map(|h| (face_of[h], face_of[self.alpha[h]]))
            .collect();
        Multigraph {
            vertices: faces.len(),
            edges,
        }
    }
}

pub(crate) fn standard_rotation(degrees: &[usize]) -> Vec<usize> {
    let mut sigma = Vec::with_capacity(degrees.iter().sum());
    let mut start = 0;
    for &d in degrees {
        for t in 0..d {
            sigma.push(start + (t + 1) % d);
        }
        start += d;
    }
    sigma
}

/// An abstract graph allowing loops and parallel edges.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    /// Merges the vertices of each class: `classes[v]` is the class of `v`,
    /// numbered `0..k`.
    pub fn contract(&self, classes: &[usize]) -> Multigraph {
        let k = classes.iter().map(|&c| c + 1).max().unwrap_or(0);
        Multigraph {
            vertices: k,
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (classes[u], classes[v]))
                .collect(),
        }
    }

    /// The graph as a [`SimpleGraph`] when it has no loop, no parallel edge
    /// and no isolated vertex.
    pub fn as_nimple(&self) -> Option<SimpleGraph> {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &self.edges {
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                return None;
            }
        }
        if self.vertices > crate::census::MAX_VERTICES {
            return None;
        }
        let g = SimpleGraph::new(self.vertices, &seen.into_iter().collect::<Vec<_>>());
        g.is_nimple().then_some(g)
    }
}
