//! Planarity by path addition on biconnected blocks, and the labelled
//! planar-graph counts `p(n, r)`.

use std::collections::BTreeSet;

use super::generate::{generate_graphs, GraphFilter};
use super::graph::{automorphism_order, SimpleGraph};
use crate::error::{check_scale, Error, Result};

/// Edge sets of the biconnected blocks of `g` (bridges are blocks of one
/// edge).
pub fn blocks(g: &SimpleGraph) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        g: &'a SimpleGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(st: &mut St, u: usize, parent: Option<usize>) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        let nbrs: Vec<usize> = st.g.neighbors(u).collect();
        for v in nbrs {
            if Some(v) == parent {
                continue;
            }
            if st.disc[v] == 0 {
                st.stack.push((u, v));
                dfs(st, v, Some(u));
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (u, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    st.out.push(block);
                }
            } else if st.disc[v] < st.disc[u] {
                st.stack.push((u, v));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }
    let mut st = St {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for s in 0..g.n() {
        if st.disc[s] == 0 {
            dfs(&mut st, s, None);
        }
    }
    st.out
}

/// A fragment of a block relative to the embedded part: its attachment
/// vertices and a path between two of them through the fragment.
struct Fragment {
    attachments: u16,
    path: Vec<usize>,
}

fn fragments(
    n: usize,
    adj: &[u16],
    embedded_vertices: u16,
    embedded_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    // Chords between embedded vertices.
    for (u, &adj_u) in adj.iter().enumerate().take(n) {
        if embedded_vertices >> u & 1 == 0 {
            continue;
        }
        for v in u + 1..n {
            if adj_u >> v & 1 == 1
                && embedded_vertices >> v & 1 == 1
                && !embedded_edges.contains(&(u, v))
            {
                out.push(Fragment {
                    attachments: 1 << u | 1 << v,
                    path: vec![u, v],
                });
            }
        }
    }
    // Components of the unembedded vertices, with their attachments.
    let present: u16 = (0..n).filter(|&v| adj[v] != 0).fold(0, |m, v| m | 1 << v);
    let mut free = present & !embedded_vertices;
    while free != 0 {
        let s = free.trailing_zeros() as usize;
        let mut comp = 1u16 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for (v, &a) in adj.iter().enumerate().take(n) {
                if frontier >> v & 1 == 1 {
                    next |= a;
                }
            }
            next &= !embedded_vertices & !comp;
            comp |= next;
            frontier = next;
        }
        free &= !comp;
        let mut attachments = 0u16;
        for (v, &a) in adj.iter().enumerate().take(n) {
            if comp >> v & 1 == 1 {
                attachments |= a & embedded_vertices;
            }
        }
        // Path: attachment a, into the component, out to a different b.
        let a = attachments.trailing_zeros() as usize;
        let start = (adj[a] & comp).trailing_zeros() as usize;
        let mut prev = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([start]);
        let mut seen = 1u16 << start;
        let mut path = Vec::new();
        while let Some(u) = queue.pop_front() {
            let exits = adj[u] & attachments & !(1 << a);
            if exits != 0 {
                let b = exits.trailing_zeros() as usize;
                let mut walk = vec![b, u];
                let mut x = u;
                while prev[x] != usize::MAX {
                    x = prev[x];
                    walk.push(x);
                }
                walk.push(a);
                walk.reverse();
                path = walk;
                break;
            }
            let mut nb = adj[u] & comp & !seen;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                seen |= 1 << w;
                prev[w] = u;
                queue.push_back(w);
            }
        }
        out.push(Fragment { attachments, path });
    }
    out
}

/// Path-addition planarity test for a biconnected graph given by its edges.
fn biconnected_planar(edges: &[(usize, usize)]) -> bool {
    let n = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let nv = {
        let vs: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.len()
    };
    if edges.len() < 3 {
        return true;
    }
    if edges.len() + 6 > 3 * nv {
        return false;
    }
    let mut adj = vec![0u16; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let cycle = find_cycle(n, &adj);
    let mut embedded_vertices = 0u16;
    let mut embedded_edges = BTreeSet::new();
    for t in 0..cycle.len() {
        let (u, v) = (cycle[t], cycle[(t + 1) % cycle.len()]);
        embedded_vertices |= 1 << u;
        embedded_edges.insert((u.min(v), u.max(v)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    loop {
        let frags = fragments(n, &adj, embedded_vertices, &embedded_edges);
        if frags.is_empty() {
            return true;
        }
        let face_mask = |f: &Vec<usize>| f.iter().fold(0u16, |m, &v| m | 1 << v);
        let masks: Vec<u16> = faces.iter().map(face_mask).collect();
        let mut choice = None;
        for (k, fr) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| fr.attachments & !masks[f] == 0)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((k, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((k, admissible[0]));
                    }
                }
            }
        }
        let (k, f) = choice.expect("fragments are nonempty");
        let path = &frags[k].path;
        let face = faces.swap_remove(f);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&v| v == a).unwrap();
        let rotated: Vec<usize> = face[ia..].iter().chain(&face[..ia]).copied().collect();
        let ib = rotated.iter().position(|&v| v == b).unwrap();
        let inner = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = rotated[..=ib].to_vec();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = rotated[ib..].to_vec();
        f2.push(a);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
        for t in 0..path.len() - 1 {
            let (u, v) = (path[t], path[t + 1]);
            embedded_vertices |= 1 << u | 1 << v;
            embedded_edges.insert((u.min(v), u.max(v)));
        }
    }
}

/// A cycle through the least edge of a biconnected block: the edge plus a
/// shortest path avoiding it.
fn find_cycle(n: usize, adj: &[u16]) -> Vec<usize> {
    let u = (0..n).find(|&v| adj[v] != 0).unwrap();
    let v = adj[u].trailing_zeros() as usize;
    let mut prev = vec![usize::MAX; n];
    let mut seen = 1u16 << u;
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let mut nb = adj[x] & !seen;
        if x == u {
            nb &= !(1 << v);
        }
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            seen |= 1 << w;
            prev[w] = x;
            if w == v {
                let mut cyc = vec![v];
                let mut y = v;
                while y != u {
                    y = prev[y];
                    cyc.push(y);
                }
                return cyc;
            }
            queue.push_back(w);
        }
    }
    unreachable!("every edge of a biconnected block lies on a cycle")
}

/// Whether `g` admits a planar embedding.
pub fn is_planar(g: &SimpleGraph) -> bool {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    blocks(g).iter().all(|b| biconnected_planar(b))
}

/// Number of faces `e - n + 2` of a planar embedding of a connected graph,
/// or `None` when `g` is not planar.
pub fn faces_if_planar(g: &SimpleGraph) -> Result<Option<usize>> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(is_planar(g).then(|| g.edge_count() + 2 - g.n()))
}

/// Number of labelled connected planar graphs on `n` vertices with
/// `n + r - 2` edges, summed over isomorphism classes as `n!/|Aut|`.
pub fn p_oracle(n: usize, r: usize) -> Result<u64> {
    check_scale("vertices", n, 7)?;
    if n == 0 || r == 0 {
        return Ok(0);
    }
    let e = n + r - 2;
    let fact: u64 = (1..=n as u64).product();
    Ok(generate_graphs(n, GraphFilter::Connected)?
        .iter()
        .filter(|g| g.edge_count() == e && is_planar(g))
        .map(|g| fact / automorphism_order(g))
        .sum())
}

/// `p(n, r)` for all `r`, by running through every labelled graph on `n`
/// vertices. An independent check of [`p_oracle`] for small `n`.
pub fn p_labelled_exhaustive(n: usize) -> Result<Vec<u64>> {
    check_scale("vertices", n, 6)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; pairs + 3];
    for mask in 0u32..1 << pairs {
        let g = SimpleGraph::from_column_mask(n, mask as u128);
        if n > 0 && g.is_connected() && is_planar(&g) {
            out[g.edge_count() + 2 - n] += 1;
        }
    }
    Ok(out)
}
