//! Named identity checks and their reports.
//!
//! Each check computes two (or three) sides by independent routes and diffs
//! them coefficient by coefficient. Reports are deterministic: every list is
//! in a fixed order and every number is an exact rational.

mod convergence;
mod identities;
mod mismatch;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub use convergence::{
    eta_by_classes, planar_coefficient, planar_table, scaled_log_eta, ConvergenceRow,
    ConvergenceTable, RatioCheck, SOfN, MAX_CONVERGENCE_EDGES,
};
pub use identities::{
    verify_bipz_report, verify_coin, verify_ice, verify_main2, verify_main3, verify_main7,
    verify_planar_convergence, verify_prr_report, verify_witt,
};
pub use mismatch::{diff, diff_case, Mismatch};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Main7,
    Main3,
    Ice,
    Main2,
    Prr,
    Bipz,
    Coin,
    Witt,
    PlanarConvergence,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Main7,
        Identity::Main3,
        Identity::Ice,
        Identity::Main2,
        Identity::Prr,
        Identity::Bipz,
        Identity::Coin,
        Identity::Witt,
        Identity::PlanarConvergence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Main7 => "main7",
            Identity::Main3 => "main3",
            Identity::Ice => "ice",
            Identity::Main2 => "main2",
            Identity::Prr => "prr",
            Identity::Bipz => "bipz",
            Identity::Coin => "coin",
            Identity::Witt => "witt",
            Identity::PlanarConvergence => "planar-convergence",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown identity `{s}`")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity check. `n` is `null` for symbolic `N`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub identity: Identity,
    pub n: Option<u16>,
    pub degree_bound: usize,
    pub status: Status,
    /// Number of coefficients (or cases) compared.
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<ConvergenceTable>,
}

impl Report {
    pub(crate) fn new(
        identity: Identity,
        n: Option<u16>,
        degree_bound: usize,
        compared: usize,
        mismatches: Vec<Mismatch>,
    ) -> Self {
        Report {
            identity,
            n,
            degree_bound,
            status: if mismatches.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            compared,
            mismatches,
            table: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Bounds for a verification run. `None` fields take the identity's
/// default.
#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    /// Numeric matrix dimension; `None` keeps `N` symbolic.
    pub n: Option<u16>,
    pub n_max: Option<u16>,
    pub r: Option<usize>,
    pub max_edges: Option<usize>,
    pub max_m_degree: Option<usize>,
    pub max_z_order: Option<usize>,
    pub degrees: Vec<u32>,
    /// Coin multiset sizes, inclusive.
    pub totals: Option<(usize, usize)>,
    /// Number of Witt variables; `None` runs 1 to 3.
    pub k: Option<usize>,
    /// Total degree for the Witt product.
    pub max_degree: Option<usize>,
    pub sweep: Vec<u16>,
    pub s_of_n: SOfN,
}

/// Runs the named identity under `cfg`.
pub fn run(identity: Identity, cfg: &VerifyConfig) -> Result<Report> {
    match identity {
        Identity::Main7 => {
            let rs = cfg.r.map_or((0..=3).collect(), |r| vec![r]);
            verify_main7(cfg.n, &rs, cfg.max_edges.unwrap_or(8))
        }
        Identity::Main3 => {
            let rs = cfg.r.map_or((0..=2).collect(), |r| vec![r]);
            verify_main3(cfg.n, &rs, cfg.max_edges.unwrap_or(4))
        }
        Identity::Ice => verify_ice(cfg.n, cfg.max_edges.unwrap_or(6)),
        Identity::Main2 => verify_main2(cfg.n, cfg.n_max),
        Identity::Prr => verify_prr_report(cfg.n.unwrap_or(3), cfg.max_m_degree.unwrap_or(6)),
        Identity::Bipz => {
            let degrees = if cfg.degrees.is_empty() {
                vec![2, 3, 4]
            } else {
                cfg.degrees.clone()
            };
            verify_bipz_report(&degrees, cfg.max_z_order.unwrap_or(2))
        }
        Identity::Coin => {
            let (lo, hi) = cfg.totals.unwrap_or((2, 7));
            verify_coin(lo, hi)
        }
        Identity::Witt => {
            let ks = cfg.k.map_or((1..=3).collect(), |k| vec![k]);
            verify_witt(&ks, cfg.max_degree.unwrap_or(6))
        }
        Identity::PlanarConvergence => {
            let sweep = if cfg.sweep.is_empty() {
                vec![4, 6, 8]
            } else {
                cfg.sweep.clone()
            };
            verify_planar_convergence(cfg.n_max.unwrap_or(4) as usize, &sweep, cfg.s_of_n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_names_round_trip() {
        for i in Identity::ALL {
            assert_eq!(i.name().parse::<Identity>().unwrap(), i);
            assert_eq!(serde_json::to_value(i).unwrap(), i.name());
        }
        assert!("main9".parse::<Identity>().is_err());
    }
}
