//! Small-graph census: isomorph-free generation, automorphisms, trail and
//! cycle double covers, planarity, and the sums over graph classes.

mod covers;
mod generate;
mod graph;
mod planar;
mod rhs;

use serde::Serialize;

pub use covers::{
    aut_order_with_dcdc, dcdc_orbits, enumerate_dcdc, enumerate_tdc, has_bridge, tdc_profile,
    validate_dcdc, Dcdc, DcdcOrbit, MAX_TRANSITION_SYSTEMS,
};
pub use generate::{
    generate_graphs, generate_graphs_up_to, nimple_graphs_by_edges, GraphFilter, MAX_GENERATE,
};
pub use graph::{
    automorphism_order, automorphisms, canonical_code, canonical_form, canonical_order,
    SimpleGraph, MAX_VERTICES,
};
pub use planar::{blocks, faces_if_planar, is_planar, p_labelled_exhaustive, p_oracle};
pub use rhs::{rhs_main2, rhs_main2_at, rhs_main7};

use crate::error::Result;

/// One line of a census dump.
#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub graph: SimpleGraph,
    pub aut_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tdc_profile: Option<Vec<u64>>,
    /// DCDC classes, each with its stabilizer order `|Aut(G,C)|`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dcdc_orbits: Option<Vec<DcdcOrbit>>,
}

/// Census entries for classes on `1..=n_max` vertices passing `filter`,
/// optionally with TDC profiles and DCDC orbits.
pub fn census(n_max: usize, filter: GraphFilter, covers: bool) -> Result<Vec<CensusEntry>> {
    let graphs = generate_graphs_up_to(n_max, filter)?;
    graphs
        .into_iter()
        .filter(|g| g.n() > 0)
        .map(|g| {
            let aut_order = automorphism_order(&g);
            let (tdc_profile, dcdc_orbits) = if covers {
                (Some(covers::tdc_profile(&g)?), Some(covers::dcdc_orbits(&g)?))
            } else {
                (None, None)
            };
            Ok(CensusEntry {
                graph: g,
                aut_order,
                tdc_profile,
                dcdc_orbits,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_sizes() {
        assert_eq!(census(3, GraphFilter::Connected, false).unwrap().len(), 4);
        assert_eq!(census(2, GraphFilter::Nimple, true).unwrap().len(), 1);
    }

    #[test]
    fn stabilizers_divide() {
        for e in census(5, GraphFilter::Nimple, true).unwrap() {
            let fact: u64 = (1..=e.graph.n() as u64).product();
            assert_eq!(fact % e.aut_order, 0);
            for o in e.dcdc_orbits.unwrap() {
                assert_eq!(e.aut_order % o.stabilizer, 0);
            }
        }
    }
}
