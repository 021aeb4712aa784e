//! The map generating integrand `exp(-N Σ_i z_i Tr(M^i)/i)`.

use crate::algebra::{
    factorial, falling_factorial, int, ExactPoly, Monomial, Rational, TruncatedSeries, Truncation,
    Var, VarGroup,
};
use crate::error::{check_scale, Error, Result};
use crate::wick::pairing_count_from_counts;

/// Default bound on `Σ i·n_i` for the symbolic expansion.
pub const MAX_HALF_EDGES: usize = 10;

/// `Tr(M^k)` expanded over pointed closed index walks of length `k`.
pub fn trace_power(n: u16, k: usize) -> ExactPoly {
    let mut out = ExactPoly::zero();
    if k == 0 {
        return ExactPoly::constant(int(n as i64));
    }
    let mut idx = vec![1u16; k];
    loop {
        let m = Monomial::from_pairs_unchecked(
            (0..k).map(|t| (Var::Entry(idx[t], idx[(t + 1) % k]), 1)),
        );
        out.add_term(m, int(1));
        // Odometer increment.
        let mut t = 0;
        loop {
            if t == k {
                return out;
            }
            if idx[t] < n {
                idx[t] += 1;
                break;
            }
            idx[t] = 1;
            t += 1;
        }
    }
}

/// `ψ` at numeric `N = n` as a polynomial in matrix entries and `z_i`,
/// truncated at total `z`-order `max_z_order`.
pub fn build_psi_truncated(n: u16, degrees: &[u32], max_z_order: usize) -> Result<ExactPoly> {
    let top = degrees.iter().copied().max().unwrap_or(0) as usize;
    check_scale("entries of the expanded psi integrand", (n as usize).pow(top as u32) * max_z_order, 300)?;
    let mut f = ExactPoly::zero();
    for &i in degrees {
        let coeff = -int(n as i64) / int(i as i64);
        let zi = ExactPoly::var(Var::Zi(i as u16));
        f += (zi * trace_power(n, i as usize)).scale(&coeff);
    }
    let t = Truncation::new().with(VarGroup::IndexedZ, max_z_order as i64);
    Ok(TruncatedSeries::new(f, t)?.exp()?.into_payload())
}

/// Expectation of `∏ Tr(M^{len})` over the given trace lengths, as a
/// Laurent polynomial in `N`.
///
/// Index assignments to the `P` positions are grouped by the set partition
/// they induce; a partition with `b` blocks is realized by `N(N-1)...(N-b+1)`
/// assignments, all with the same pairing count.
pub fn trace_product_expectation(lengths: &[usize]) -> ExactPoly {
    let total: usize = lengths.iter().sum();
    if total % 2 == 1 {
        return ExactPoly::zero();
    }
    let mut next = Vec::with_capacity(total);
    let mut start = 0;
    for &len in lengths {
        for t in 0..len {
            next.push(start + (t + 1) % len);
        }
        start += len;
    }
    let mut by_blocks: Vec<num::BigInt> = vec![0.into(); total + 1];
    let mut labels = vec![0u16; total];
    rgs(&mut labels, 0, 0, &mut |labels, blocks| {
        let mut counts = std::collections::BTreeMap::new();
        for p in 0..total {
            *counts.entry((labels[p] + 1, labels[next[p]] + 1)).or_insert(0u32) += 1;
        }
        by_blocks[blocks] += pairing_count_from_counts(counts);
    });
    let mut out = ExactPoly::zero();
    let scale = Monomial::from_pairs_unchecked([(Var::N, -((total / 2) as i32))]);
    for (b, c) in by_blocks.into_iter().enumerate() {
        if c != 0.into() {
            out += falling_factorial(b).scale(&Rational::from_integer(c)).shift(&scale);
        }
    }
    out
}

fn rgs(labels: &mut [u16], pos: usize, blocks: usize, visit: &mut impl FnMut(&[u16], usize)) {
    if pos == labels.len() {
        visit(labels, blocks);
        return;
    }
    for l in 0..=blocks {
        labels[pos] = l as u16;
        rgs(labels, pos + 1, blocks.max(l + 1), visit);
    }
}

/// All multiplicity vectors `n_i ≥ 0` over `degrees` with `Σ n_i ≤ max_order`
/// and `Σ i·n_i ≤ max_half_edges`.
pub(crate) fn z_multi_indices(
    degrees: &[u32],
    max_order: usize,
    max_half_edges: usize,
) -> Vec<Vec<usize>> {
    fn go(
        degrees: &[u32],
        k: usize,
        order: usize,
        half: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == degrees.len() {
            out.push(cur.clone());
            return;
        }
        let d = degrees[k] as usize;
        let mut m = 0;
        while m <= order && m * d <= half {
            cur.push(m);
            go(degrees, k + 1, order - m, half - m * d, cur, out);
            cur.pop();
            m += 1;
        }
    }
    let mut out = Vec::new();
    go(degrees, 0, max_order, max_half_edges, &mut Vec::new(), &mut out);
    out
}

/// `⟨ψ⟩` at symbolic `N`, keeping every `z`-monomial of order at most
/// `max_z_order` and half-edge weight `Σ i·n_i` at most `max_half_edges`.
pub fn integrate_psi_symbolic(
    degrees: &[u32],
    max_z_order: usize,
    max_half_edges: usize,
) -> Result<ExactPoly> {
    check_scale("half-edges", max_half_edges, 12)?;
    if degrees.contains(&0) {
        return Err(Error::Config("degrees must be positive integers".into()));
    }
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    let n = ExactPoly::var(Var::N);
    let mut out = ExactPoly::zero();
    for ns in z_multi_indices(&degrees, max_z_order, max_half_edges) {
        let mut lengths = Vec::new();
        let mut z = Vec::new();
        let mut coeff = ExactPoly::one();
        for (k, &m) in ns.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let d = degrees[k];
            lengths.extend(std::iter::repeat_n(d as usize, m));
            z.push((Var::Zi(d as u16), m as i32));
            let per = n.scale(&(-int(1) / int(d as i64)));
            coeff = coeff * per.pow(m as u32).scale(&factorial(m).recip());
        }
        let e = trace_product_expectation(&lengths);
        out += (coeff * e).shift(&Monomial::from_pairs_unchecked(z));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::wick::integrate;

    fn n_pow(e: i32) -> ExactPoly {
        ExactPoly::term(Monomial::from_pairs_unchecked([(Var::N, e)]), int(1))
    }

    #[test]
    fn trace_expectations() {
        assert_eq!(trace_product_expectation(&[2]), n_pow(1));
        assert_eq!(
            trace_product_expectation(&[4]),
            n_pow(1).scale(&int(2)) + n_pow(-1)
        );
        assert_eq!(
            trace_product_expectation(&[3, 3]),
            ExactPoly::constant(int(12)) + n_pow(-2).scale(&int(3))
        );
        assert!(trace_product_expectation(&[3]).is_zero());
        assert_eq!(trace_product_expectation(&[]), ExactPoly::one());
    }

    #[test]
    fn numeric_psi_matches_symbolic() {
        let degrees = [2u32, 4];
        for n in 1..=3u16 {
            let psi = build_psi_truncated(n, &degrees, 1).unwrap();
            let num = integrate(&psi).eval_n(&int(n as i64));
            let sym = integrate_psi_symbolic(&degrees, 1, 10).unwrap().eval_n(&int(n as i64));
            assert_eq!(num, sym, "n={n}");
        }
    }

    #[test]
    fn z2_and_z4_coefficients() {
        let p = integrate_psi_symbolic(&[2, 4], 1, 10).unwrap();
        let z2 = p.coeff_of(&[(Var::Zi(2), 1), (Var::Zi(4), 0)]);
        assert_eq!(z2, n_pow(2).scale(&rat(-1, 2)));
        let z4 = p.coeff_of(&[(Var::Zi(2), 0), (Var::Zi(4), 1)]);
        assert_eq!(z4, (n_pow(2).scale(&int(2)) + ExactPoly::one()).scale(&rat(-1, 4)));
        assert_eq!(p.constant_term(), int(1));
    }

    #[test]
    fn z2_coefficient_of_expanded_integrand() {
        let psi = build_psi_truncated(2, &[2], 1).unwrap();
        let c = psi.coeff_of(&[(Var::Zi(2), 1)]);
        assert_eq!(c, trace_power(2, 2).scale(&int(-1)));
    }

    #[test]
    fn multi_indices() {
        let v = z_multi_indices(&[2, 3], 2, 6);
        assert!(v.contains(&vec![0, 2]) && v.contains(&vec![1, 1]) && !v.contains(&vec![2, 1]));
    }
}
