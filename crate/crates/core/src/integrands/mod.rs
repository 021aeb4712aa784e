//! The five integrands as explicit polynomials in matrix entries, and their
//! Gaussian expectations at numeric or symbolic `N`.

mod psi;
mod symbolic;

pub use psi::{
    build_psi_truncated, integrate_psi_symbolic, trace_power, trace_product_expectation,
    MAX_HALF_EDGES,
};
pub(crate) use psi::z_multi_indices;
pub use symbolic::{
    binomial_n,
    integrate_eta_symbolic, integrate_omega_symbolic, integrate_xi_symbolic,
    integrate_zeta_symbolic, SupportRoute,
};

use serde::{Deserialize, Serialize};

use crate::algebra::{int, ExactPoly, Monomial, Rational, Var};
use crate::digraph::{
    components, count_cycle_decompositions, enumerate_eulerian, for_each_eulerian, EdgeSet,
    EulerianFilter, TrailMemo,
};
use crate::error::{check_scale, Error, Result};
use crate::wick::integrate;

/// Largest numeric dimension the explicit builders accept.
pub const MAX_NUMERIC_N: u16 = 8;
/// Largest directed-edge budget for ω, ζ, η.
pub const MAX_EDGES: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegrandKind {
    Psi,
    Omega,
    Zeta,
    Eta,
    Xi,
}

/// What to integrate. `n = None` means symbolic `N`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntegrandSpec {
    pub kind: IntegrandKind,
    pub n: Option<u16>,
    #[serde(default)]
    pub r: usize,
    #[serde(default)]
    pub max_edges: usize,
    #[serde(default)]
    pub max_z_order: usize,
    #[serde(default)]
    pub degrees: Vec<u32>,
    /// Vertex bound for symbolic ξ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u16>,
}

impl IntegrandSpec {
    pub fn new(kind: IntegrandKind) -> Self {
        IntegrandSpec {
            kind,
            n: None,
            r: 0,
            max_edges: 0,
            max_z_order: 0,
            degrees: Vec::new(),
            n_max: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == Some(0) {
            return Err(Error::Config("N must be at least 1".into()));
        }
        if let Some(n) = self.n {
            check_scale("N", n as usize, MAX_NUMERIC_N as usize)?;
        }
        match self.kind {
            IntegrandKind::Omega | IntegrandKind::Zeta | IntegrandKind::Eta => {
                if self.max_edges % 2 == 1 {
                    return Err(Error::Config("max_edges must be even".into()));
                }
                check_scale("max_edges", self.max_edges, MAX_EDGES)?;
            }
            IntegrandKind::Psi => {
                if self.degrees.is_empty() || self.degrees.contains(&0) {
                    return Err(Error::Config("degrees must be positive integers".into()));
                }
                if self.max_z_order == 0 {
                    return Err(Error::Config("max_z_order must be positive".into()));
                }
            }
            IntegrandKind::Xi => {
                if self.n.is_none() && self.n_max.is_none() {
                    return Err(Error::Config("symbolic xi needs n_max".into()));
                }
                if let Some(n) = self.n {
                    check_scale("N for xi", n as usize, 5)?;
                }
                if let Some(m) = self.n_max {
                    check_scale("n_max", m as usize, 6)?;
                }
            }
        }
        Ok(())
    }
}

fn y_pow(k: usize) -> Monomial {
    Monomial::from_pairs_unchecked([(Var::Y, k as i32)])
}

fn x_pow(k: usize) -> Monomial {
    Monomial::from_pairs_unchecked([(Var::X, k as i32)])
}

/// `ω_r`: the sum of `y^{|q|/2} ∏ M_e` over eulerian `q` with `|q| ≤
/// max_edges` that split into exactly `r` closed trails.
pub fn build_omega(n: u16, r: usize, max_edges: usize) -> ExactPoly {
    let mut memo = TrailMemo::new();
    let mut out = ExactPoly::zero();
    for q in enumerate_eulerian(n, max_edges) {
        if r < 128 && memo.r_values(&q) >> r & 1 == 1 {
            out.add_term(q.monomial().mul(&y_pow(q.len() / 2)), int(1));
        }
    }
    out
}

/// `ζ = Σ_r ω_r x^r`.
pub fn build_zeta(n: u16, max_edges: usize) -> ExactPoly {
    let mut memo = TrailMemo::new();
    let mut out = ExactPoly::zero();
    for q in enumerate_eulerian(n, max_edges) {
        let mask = memo.r_values(&q);
        let base = q.monomial().mul(&y_pow(q.len() / 2));
        for r in (0..128).filter(|r| mask >> r & 1 == 1) {
            out.add_term(base.mul(&x_pow(r)), int(1));
        }
    }
    out
}

/// `U(A, x) = ∏_C (x + x² + ... + x^{|C|/2})` over the weak components.
pub fn u_polynomial(a: &EdgeSet) -> ExactPoly {
    let mut u = ExactPoly::one();
    for c in components(a) {
        let factor = ExactPoly::from_terms((1..=c.len() / 2).map(|i| (x_pow(i), int(1))));
        u = &u * &factor;
    }
    u
}

/// `η = Σ_A U(A, x) y^{|A|/2} ∏ M_e` over eulerian `A`.
pub fn build_eta(n: u16, max_edges: usize) -> ExactPoly {
    let mut out = ExactPoly::zero();
    for a in enumerate_eulerian(n, max_edges) {
        let base = a.monomial().mul(&y_pow(a.len() / 2));
        out += u_polynomial(&a).shift(&base);
    }
    out
}

/// The substitution `x → N z / y`.
pub fn specialize_eta(eta: &ExactPoly) -> ExactPoly {
    let rep = ExactPoly::term(
        Monomial::from_pairs_unchecked([(Var::N, 1), (Var::Z, 1), (Var::Y, -1)]),
        int(1),
    );
    eta.substitute(Var::X, &rep)
        .expect("x → Nz/y keeps every exponent legal")
}

/// `ξ`: even sets weighted by their number of decompositions into directed
/// cycles of length ≥ 3, restricted to at most `max_degree` edges.
pub fn build_xi_bounded(n: u16, max_degree: usize, filter: EulerianFilter) -> ExactPoly {
    let mut out = ExactPoly::zero();
    for_each_eulerian(n, max_degree, filter, |q| {
        let c = count_cycle_decompositions(q, 3);
        if c > 0 {
            out.add_term(q.monomial(), Rational::from_integer(c.into()));
        }
    });
    out
}

/// The full `ξ` on `D(N)`.
pub fn build_xi(n: u16) -> ExactPoly {
    let all = n as usize * (n as usize).saturating_sub(1);
    build_xi_bounded(n, all, EulerianFilter::default())
}

/// `⟨integrand⟩` with every matrix entry integrated out.
pub fn integrate_spec(spec: &IntegrandSpec) -> Result<ExactPoly> {
    spec.validate()?;
    let route = SupportRoute::PairableOnly;
    let value = match (spec.kind, spec.n) {
        (IntegrandKind::Omega, Some(n)) => integrate(&build_omega(n, spec.r, spec.max_edges)),
        (IntegrandKind::Omega, None) => integrate_omega_symbolic(spec.r, spec.max_edges, route),
        (IntegrandKind::Zeta, Some(n)) => integrate(&build_zeta(n, spec.max_edges)),
        (IntegrandKind::Zeta, None) => integrate_zeta_symbolic(spec.max_edges, route),
        (IntegrandKind::Eta, Some(n)) => integrate(&build_eta(n, spec.max_edges)),
        (IntegrandKind::Eta, None) => integrate_eta_symbolic(spec.max_edges, route),
        (IntegrandKind::Xi, Some(n)) => integrate(&build_xi(n)),
        (IntegrandKind::Xi, None) => integrate_xi_symbolic(spec.n_max.unwrap_or(0), route),
        (IntegrandKind::Psi, Some(n)) => {
            let psi = build_psi_truncated(n, &spec.degrees, spec.max_z_order)?;
            integrate(&psi)
        }
        (IntegrandKind::Psi, None) => {
            integrate_psi_symbolic(&spec.degrees, spec.max_z_order, psi::MAX_HALF_EDGES)?
        }
    };
    Ok(match spec.n {
        Some(n) => value.eval_n(&int(n as i64)),
        None => value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn entries(n: u16, e: &[(u16, u16)]) -> Monomial {
        EdgeSet::from_edges(n, e).unwrap().monomial()
    }

    #[test]
    fn omega_examples() {
        let w = build_omega(2, 1, 2);
        let want = ExactPoly::term(entries(2, &[(1, 2), (2, 1)]).mul(&y_pow(1)), int(1));
        assert_eq!(w, want);
        assert_eq!(build_omega(5, 0, 6), ExactPoly::one());
        let tri = EdgeSet::symmetric(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let want = ExactPoly::term(tri.monomial().mul(&y_pow(3)), int(1));
        assert_eq!(build_omega(3, 3, 6), want);
    }

    #[test]
    fn zeta_and_eta_examples() {
        let z = build_zeta(2, 2);
        let m = entries(2, &[(1, 2), (2, 1)]).mul(&y_pow(1)).mul(&x_pow(1));
        let want = ExactPoly::one() + ExactPoly::term(m, int(1));
        assert_eq!(z, want);
        assert_eq!(build_eta(2, 2), want);
        assert!(z.coeff_of(&[(Var::X, 0)]) == ExactPoly::one());
        let tri = EdgeSet::symmetric(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let u = u_polynomial(&tri);
        assert_eq!(u, ExactPoly::from_terms((1..=3).map(|i| (x_pow(i), int(1)))));
        let pairs = EdgeSet::symmetric(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(u_polynomial(&pairs), ExactPoly::term(x_pow(2), int(1)));
    }

    #[test]
    fn specialize_examples() {
        let m = entries(2, &[(1, 2), (2, 1)]);
        let p = ExactPoly::term(m.mul(&y_pow(1)).mul(&x_pow(1)), int(1));
        let got = specialize_eta(&p);
        let want = ExactPoly::term(
            m.mul(&Monomial::from_pairs_unchecked([(Var::N, 1), (Var::Z, 1)])),
            int(1),
        );
        assert_eq!(got, want);
        assert_eq!(specialize_eta(&ExactPoly::one()), ExactPoly::one());
    }

    #[test]
    fn xi_examples() {
        assert_eq!(build_xi(2), ExactPoly::one());
        let xi = build_xi(3);
        assert_eq!(xi.len(), 4);
        let tri = EdgeSet::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let both = EdgeSet::symmetric(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(xi.coefficient(&tri.monomial()), int(1));
        assert_eq!(xi.coefficient(&both.monomial()), int(1));
        let v = integrate(&xi).eval_n(&int(3));
        assert_eq!(v.as_constant(), Some(int(1) + rat(1, 27)));
    }

    #[test]
    fn omega_one_symbolic() {
        let mut spec = IntegrandSpec::new(IntegrandKind::Omega);
        spec.r = 1;
        spec.max_edges = 4;
        let w = integrate_spec(&spec).unwrap();
        let n = ExactPoly::var(Var::N);
        let one = ExactPoly::one();
        let y1 = w.coeff_of(&[(Var::Y, 1)]);
        assert_eq!(y1, (&n - &one).scale(&rat(1, 2)));
        let y2 = w.coeff_of(&[(Var::Y, 2)]);
        let ninv = ExactPoly::term(Monomial::from_pairs_unchecked([(Var::N, -1)]), int(1));
        let want = ((&n - &one) * (&n - &one.scale(&int(2))) * ninv).scale(&rat(1, 2));
        assert_eq!(y2, want);
    }

    #[test]
    fn validation() {
        let mut spec = IntegrandSpec::new(IntegrandKind::Omega);
        spec.max_edges = 3;
        assert!(matches!(integrate_spec(&spec), Err(Error::Config(_))));
        spec.max_edges = 40;
        if !crate::error::scale_override() {
            assert!(matches!(spec.validate(), Err(Error::ScaleExceeded { .. })));
        }
        let spec = IntegrandSpec::new(IntegrandKind::Xi);
        assert!(integrate_spec(&spec).is_err());
    }

    #[test]
    fn spec_json_fields() {
        let mut spec = IntegrandSpec::new(IntegrandKind::Omega);
        spec.n = Some(3);
        spec.r = 1;
        spec.max_edges = 4;
        let j = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            j,
            r#"{"kind":"omega","n":3,"r":1,"max_edges":4,"max_z_order":0,"degrees":[]}"#
        );
    }
}
