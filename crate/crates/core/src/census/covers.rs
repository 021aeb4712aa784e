//! Trail double covers and directed cycle double covers, counted through
//! transition systems.
//!
//! Every undirected edge `{u, v}` becomes the two arcs `u→v` and `v→u`. A
//! transition system picks, at every vertex, a bijection from incoming to
//! outgoing arcs; its successor permutation splits the arcs into closed
//! trails, and every decomposition of the arcs into closed trails arises
//! from exactly one transition system.

use std::collections::BTreeSet;

use serde::Serialize;

use super::graph::{automorphisms, SimpleGraph};
use crate::error::{check_scale, Error, Result};

/// Upper bound on the number of transition systems explored.
pub const MAX_TRANSITION_SYSTEMS: u128 = 50_000_000;

/// Arcs of the doubled graph: arc `2k` is `u→v` and `2k + 1` is `v→u` for the
/// `k`-th edge `(u, v)`, `u < v`.
struct Arcs {
    tail: Vec<usize>,
    head: Vec<usize>,
    into: Vec<Vec<usize>>,
    out_of: Vec<Vec<usize>>,
}

impl Arcs {
    fn new(g: &SimpleGraph) -> Self {
        let mut tail = Vec::new();
        let mut head = Vec::new();
        for (u, v) in g.edges() {
            tail.extend([u, v]);
            head.extend([v, u]);
        }
        let mut into = vec![Vec::new(); g.n()];
        let mut out_of = vec![Vec::new(); g.n()];
        for a in 0..tail.len() {
            into[head[a]].push(a);
            out_of[tail[a]].push(a);
        }
        Arcs {
            tail,
            head,
            into,
            out_of,
        }
    }

    fn len(&self) -> usize {
        self.tail.len()
    }
}

fn transition_systems(g: &SimpleGraph) -> u128 {
    (0..g.n())
        .map(|v| (1..=g.degree(v) as u128).product::<u128>())
        .product()
}

fn count_cycles(succ: &[usize]) -> usize {
    let mut seen = vec![false; succ.len()];
    let mut cycles = 0;
    for s in 0..succ.len() {
        if !seen[s] {
            cycles += 1;
            let mut a = s;
            while !seen[a] {
                seen[a] = true;
                a = succ[a];
            }
        }
    }
    cycles
}

/// `profile[r]` = number of TDCs of `g` made of exactly `r` closed trails.
pub fn tdc_profile(g: &SimpleGraph) -> Result<Vec<u64>> {
    let total = transition_systems(g);
    check_scale("transition systems", total.min(usize::MAX as u128) as usize, MAX_TRANSITION_SYSTEMS as usize)?;
    let arcs = Arcs::new(g);
    let mut profile = vec![0u64; arcs.len() / 2 + 1];
    let mut succ = vec![usize::MAX; arcs.len()];
    fn go(
        arcs: &Arcs,
        v: usize,
        k: usize,
        used: u64,
        succ: &mut Vec<usize>,
        profile: &mut [u64],
    ) {
        if v == arcs.into.len() {
            profile[count_cycles(succ)] += 1;
            return;
        }
        if k == arcs.into[v].len() {
            go(arcs, v + 1, 0, 0, succ, profile);
            return;
        }
        let a = arcs.into[v][k];
        for (t, &b) in arcs.out_of[v].iter().enumerate() {
            if used >> t & 1 == 0 {
                succ[a] = b;
                go(arcs, v, k + 1, used | 1 << t, succ, profile);
            }
        }
    }
    if arcs.len() == 0 {
        profile[0] = 1;
        return Ok(profile);
    }
    go(&arcs, 0, 0, 0, &mut succ, &mut profile);
    Ok(profile)
}

/// Number of TDCs of `g` with exactly `r` closed trails (unpointed,
/// unordered).
pub fn enumerate_tdc(g: &SimpleGraph, r: usize) -> Result<u64> {
    Ok(tdc_profile(g)?.get(r).copied().unwrap_or(0))
}

/// A directed cycle double cover: vertex sequences, each rotated to start
/// at its least vertex, sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Dcdc {
    pub cycles: Vec<Vec<usize>>,
}

impl Dcdc {
    pub fn new(cycles: Vec<Vec<usize>>) -> Self {
        let mut cycles: Vec<Vec<usize>> = cycles.into_iter().map(|c| rotate_min(&c)).collect();
        cycles.sort();
        Dcdc { cycles }
    }

    /// The cover carried along a vertex map.
    pub fn mapped(&self, perm: &[usize]) -> Dcdc {
        Dcdc::new(
            self.cycles
                .iter()
                .map(|c| c.iter().map(|&v| perm[v]).collect())
                .collect(),
        )
    }
}

fn rotate_min(c: &[usize]) -> Vec<usize> {
    let k = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
    c[k..].iter().chain(&c[..k]).copied().collect()
}

/// Whether `g` has an edge whose removal disconnects its component.
pub fn has_bridge(g: &SimpleGraph) -> bool {
    let comps = |h: &SimpleGraph| {
        let mut seen = 0u16;
        let mut count = 0;
        for s in 0..h.n() {
            if seen >> s & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier = 1u16 << s;
            seen |= frontier;
            while frontier != 0 {
                let mut next = 0;
                for v in 0..h.n() {
                    if frontier >> v & 1 == 1 {
                        next |= h.adj(v);
                    }
                }
                frontier = next & !seen;
                seen |= next;
            }
        }
        count
    };
    let base = comps(g);
    g.edges()
        .into_iter()
        .any(|(u, v)| comps(&g.without_edge(u, v)) > base)
}

/// All DCDCs of `g`: transition systems with no U-turn whose closed trails
/// are vertex-simple (hence of length at least 3).
pub fn enumerate_dcdc(g: &SimpleGraph) -> Result<Vec<Dcdc>> {
    check_scale("vertices for DCDC search", g.n(), 6)?;
    if g.edge_count() == 0 || has_bridge(g) {
        return Ok(Vec::new());
    }
    let arcs = Arcs::new(g);
    let m = arcs.len();
    let mut st = DcdcSearch {
        arcs: &arcs,
        succ: vec![usize::MAX; m],
        pred: vec![usize::MAX; m],
        out: Vec::new(),
    };
    st.go(0, 0, 0);
    let mut out = st.out;
    out.sort();
    Ok(out)
}

struct DcdcSearch<'a> {
    arcs: &'a Arcs,
    succ: Vec<usize>,
    pred: Vec<usize>,
    out: Vec<Dcdc>,
}

impl DcdcSearch<'_> {
    /// Whether linking `a → b` keeps every chain vertex-simple.
    fn link_ok(&self, a: usize, b: usize) -> bool {
        if b == a ^ 1 {
            return false;
        }
        let mut start = a;
        while self.pred[start] != usize::MAX {
            start = self.pred[start];
        }
        let mut end = b;
        while self.succ[end] != usize::MAX {
            end = self.succ[end];
        }
        if end == a {
            // Closing a chain into a cycle; it was simple when open.
            return true;
        }
        let mut seen = 0u32;
        let mut x = start;
        loop {
            let t = self.arcs.tail[x];
            if seen >> t & 1 == 1 {
                return false;
            }
            seen |= 1 << t;
            if x == a {
                break;
            }
            x = self.succ[x];
        }
        let mut x = b;
        loop {
            let t = self.arcs.tail[x];
            if seen >> t & 1 == 1 {
                return false;
            }
            seen |= 1 << t;
            if x == end {
                break;
            }
            x = self.succ[x];
        }
        let h = self.arcs.head[end];
        // The open chain may end where it started; any other repeat is fatal.
        seen >> h & 1 == 0 || h == self.arcs.tail[start]
    }

    fn go(&mut self, v: usize, k: usize, used: u64) {
        let arcs = self.arcs;
        if v == arcs.into.len() {
            self.record();
            return;
        }
        if k == arcs.into[v].len() {
            self.go(v + 1, 0, 0);
            return;
        }
        let a = arcs.into[v][k];
        for t in 0..arcs.out_of[v].len() {
            let b = arcs.out_of[v][t];
            if used >> t & 1 == 1 || !self.link_ok(a, b) {
                continue;
            }
            self.succ[a] = b;
            self.pred[b] = a;
            self.go(v, k + 1, used | 1 << t);
            self.succ[a] = usize::MAX;
            self.pred[b] = usize::MAX;
        }
    }

    fn record(&mut self) {
        let m = self.succ.len();
        let mut seen = vec![false; m];
        let mut cycles = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut a = s;
            while !seen[a] {
                seen[a] = true;
                c.push(self.arcs.tail[a]);
                a = self.succ[a];
            }
            cycles.push(c);
        }
        self.out.push(Dcdc::new(cycles));
    }
}

/// Checks that `c` is a DCDC of `g`.
pub fn validate_dcdc(g: &SimpleGraph, c: &Dcdc) -> Result<()> {
    let mut covered = BTreeSet::new();
    for cyc in &c.cycles {
        if cyc.len() < 3 {
            return Err(Error::InvalidCover(format!("cycle {cyc:?} shorter than 3")));
        }
        let distinct: BTreeSet<_> = cyc.iter().collect();
        if distinct.len() != cyc.len() {
            return Err(Error::InvalidCover(format!("cycle {cyc:?} repeats a vertex")));
        }
        for t in 0..cyc.len() {
            let (u, v) = (cyc[t], cyc[(t + 1) % cyc.len()]);
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return Err(Error::InvalidCover(format!("{u}→{v} is not an edge")));
            }
            if !covered.insert((u, v)) {
                return Err(Error::InvalidCover(format!("arc {u}→{v} covered twice")));
            }
        }
    }
    if covered.len() != 2 * g.edge_count() {
        return Err(Error::InvalidCover("some arc is not covered".into()));
    }
    Ok(())
}

/// `|Aut(G, C)|`: automorphisms of `g` mapping the directed cycles of `c`
/// onto themselves.
pub fn aut_order_with_dcdc(g: &SimpleGraph, c: &Dcdc) -> Result<u64> {
    validate_dcdc(g, c)?;
    Ok(automorphisms(g)
        .iter()
        .filter(|p| &c.mapped(p) == c)
        .count() as u64)
}

/// One orbit of `Aut(G)` on the DCDCs of `G`.
#[derive(Clone, Debug, Serialize)]
pub struct DcdcOrbit {
    /// Least member of the orbit.
    pub representative: Dcdc,
    pub size: u64,
    pub stabilizer: u64,
}

/// Splits the DCDCs of `g` into automorphism orbits, checking
/// `size · stabilizer = |Aut(G)|` for each.
pub fn dcdc_orbits(g: &SimpleGraph) -> Result<Vec<DcdcOrbit>> {
    let auts = automorphisms(g);
    let covers = enumerate_dcdc(g)?;
    let mut remaining: BTreeSet<Dcdc> = covers.into_iter().collect();
    let mut out = Vec::new();
    while let Some(rep) = remaining.pop_first() {
        let orbit: BTreeSet<Dcdc> = auts.iter().map(|p| rep.mapped(p)).collect();
        let stabilizer = auts.iter().filter(|p| rep.mapped(p) == rep).count() as u64;
        for c in &orbit {
            remaining.remove(c);
        }
        let size = orbit.len() as u64;
        if size * stabilizer != auts.len() as u64 {
            return Err(Error::InvalidCover(format!(
                "orbit {size} × stabilizer {stabilizer} ≠ |Aut| {}",
                auts.len()
            )));
        }
        out.push(DcdcOrbit {
            representative: rep,
            size,
            stabilizer,
        });
    }
    Ok(out)
}
