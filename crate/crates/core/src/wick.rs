//! Gaussian expectations of products of matrix entries via Wick pairings.
//!
//! Under the normalized measure, `⟨M_ij M_kl⟩ = δ_il δ_jk / N`, so the
//! expectation of a product is the number of perfect matchings of its factors
//! into mutually reversed pairs, times `N^{-|I|/2}`.

use std::collections::BTreeMap;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{ExactPoly, Monomial, Rational, Var};
use crate::error::{Error, Result};

/// A multiset of directed index pairs, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct EdgeMultiset {
    dim: u16,
    items: Vec<(u16, u16)>,
}

impl EdgeMultiset {
    pub fn new(dim: u16, mut items: Vec<(u16, u16)>) -> Result<Self> {
        for &(i, j) in &items {
            if i == 0 || j == 0 || i > dim || j > dim {
                return Err(Error::IndexOutOfRange(i, j, dim));
            }
        }
        items.sort_unstable();
        Ok(EdgeMultiset { dim, items })
    }

    pub fn dim(&self) -> u16 {
        self.dim
    }

    pub fn items(&self) -> &[(u16, u16)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Multiplicity of each distinct pair.
    pub fn counts(&self) -> BTreeMap<(u16, u16), u32> {
        let mut c = BTreeMap::new();
        for &p in &self.items {
            *c.entry(p).or_insert(0) += 1;
        }
        c
    }
}

/// A perfect matching of positions of an [`EdgeMultiset`], each pair
/// mutually reversed. Pairs are `(p, q)` with `p < q`, sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
}

/// All proper pairings of `set`, in lexicographic order of their pair lists.
pub fn enumerate_pairings(set: &EdgeMultiset) -> Vec<Pairing> {
    fn go(
        items: &[(u16, u16)],
        used: &mut [bool],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Pairing>,
    ) {
        let Some(p) = used.iter().position(|u| !u) else {
            out.push(Pairing { pairs: cur.clone() });
            return;
        };
        used[p] = true;
        let (a, b) = items[p];
        for q in p + 1..items.len() {
            if !used[q] && items[q] == (b, a) {
                used[q] = true;
                cur.push((p, q));
                go(items, used, cur, out);
                cur.pop();
                used[q] = false;
            }
        }
        used[p] = false;
    }
    let mut out = Vec::new();
    if set.len() % 2 == 1 {
        return out;
    }
    let mut used = vec![false; set.len()];
    go(&set.items, &mut used, &mut Vec::new(), &mut out);
    out
}

/// Number of proper pairings from pair multiplicities.
///
/// Pairings factor over the classes `{(i,j),(j,i)}`: with `k` copies of each
/// direction there are `k!` matchings, and `m` copies of a loop `(i,i)` give
/// `(m-1)!!` when `m` is even.
pub fn pairing_count_from_counts<I>(counts: I) -> BigInt
where
    I: IntoIterator<Item = ((u16, u16), u32)>,
{
    let counts: BTreeMap<(u16, u16), u32> = counts.into_iter().collect();
    let mut total = BigInt::from(1);
    for (&(i, j), &k) in &counts {
        if i == j {
            if k % 2 == 1 {
                return BigInt::from(0);
            }
            let mut f = k as i64 - 1;
            while f > 1 {
                total *= f;
                f -= 2;
            }
        } else if i < j {
            if counts.get(&(j, i)).copied().unwrap_or(0) != k {
                return BigInt::from(0);
            }
            for f in 2..=k as i64 {
                total *= f;
            }
        } else if !counts.contains_key(&(j, i)) {
            return BigInt::from(0);
        }
    }
    total
}

pub fn pairing_count(set: &EdgeMultiset) -> BigInt {
    pairing_count_from_counts(set.counts())
}

/// `⟨∏_{(i,j)∈I} M_ij⟩` as a Laurent polynomial in `N`.
pub fn wick_value(set: &EdgeMultiset) -> ExactPoly {
    let count = pairing_count(set);
    scaled_by_n(count, set.len())
}

fn scaled_by_n(count: BigInt, degree: usize) -> ExactPoly {
    if count == BigInt::from(0) {
        return ExactPoly::zero();
    }
    let m = Monomial::from_pairs_unchecked([(Var::N, -((degree / 2) as i32))]);
    ExactPoly::term(m, Rational::from_integer(count))
}

/// Wick value of one monomial's entry part; scalar variables pass through.
pub fn integrate_monomial(m: &Monomial) -> ExactPoly {
    let (entries, scalars) = m.split(Var::is_entry);
    let degree = entries.total_degree() as usize;
    let count = pairing_count_from_counts(entries.entries().map(|(p, e)| (p, e as u32)));
    scaled_by_n(count, degree).shift(&scalars)
}

/// Replaces every product of matrix entries by its Gaussian expectation.
pub fn integrate(f: &ExactPoly) -> ExactPoly {
    f.flat_map_terms(|m, c| integrate_monomial(m).scale(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn set(items: &[(u16, u16)]) -> EdgeMultiset {
        EdgeMultiset::new(4, items.to_vec()).unwrap()
    }

    fn n_pow(e: i32) -> ExactPoly {
        ExactPoly::term(Monomial::new([(Var::N, e)]).unwrap(), int(1))
    }

    #[test]
    fn small_pairings() {
        assert_eq!(enumerate_pairings(&set(&[(1, 2), (2, 1)])).len(), 1);
        assert_eq!(enumerate_pairings(&set(&[(1, 2), (1, 2)])).len(), 0);
        assert_eq!(
            enumerate_pairings(&set(&[(1, 2), (2, 1), (1, 2), (2, 1)])).len(),
            2
        );
    }

    #[test]
    fn values() {
        assert_eq!(wick_value(&set(&[(1, 2), (2, 1)])), n_pow(-1));
        assert_eq!(wick_value(&set(&[(1, 1), (1, 1)])), n_pow(-1));
        assert!(wick_value(&set(&[(1, 2), (3, 4)])).is_zero());
        assert!(wick_value(&set(&[(1, 1), (1, 1), (1, 1)])).is_zero());
        assert_eq!(wick_value(&set(&[])), ExactPoly::one());
        // Four copies of a loop: 3 matchings.
        assert_eq!(
            wick_value(&set(&[(2, 2); 4])),
            n_pow(-2).scale(&int(3))
        );
    }

    #[test]
    fn out_of_range() {
        assert!(EdgeMultiset::new(2, vec![(1, 3)]).is_err());
        assert!(EdgeMultiset::new(2, vec![(0, 1)]).is_err());
    }

    fn trace_power(n: u16, k: usize) -> ExactPoly {
        // Σ over closed index walks i_0 → i_1 → ... → i_0.
        let mut out = ExactPoly::zero();
        let total = (n as usize).pow(k as u32);
        for code in 0..total {
            let mut idx = Vec::with_capacity(k);
            let mut c = code;
            for _ in 0..k {
                idx.push((c % n as usize) as u16 + 1);
                c /= n as usize;
            }
            let m = Monomial::from_pairs_unchecked(
                (0..k).map(|t| (Var::Entry(idx[t], idx[(t + 1) % k]), 1)),
            );
            out.add_term(m, int(1));
        }
        out
    }

    #[test]
    fn traces_at_three() {
        let n3 = int(3);
        let t2 = integrate(&trace_power(3, 2)).eval_n(&n3);
        assert_eq!(t2.as_constant(), Some(int(3)));
        let t4 = integrate(&trace_power(3, 4)).eval_n(&n3);
        assert_eq!(t4.as_constant(), Some(rat(19, 3)));
        assert_eq!(integrate(&ExactPoly::one()), ExactPoly::one());
    }

    #[test]
    fn scalars_pass_through() {
        let m = Monomial::new([(Var::Y, 2), (Var::Entry(1, 2), 1), (Var::Entry(2, 1), 1)]).unwrap();
        let got = integrate(&ExactPoly::term(m, rat(3, 2)));
        let want = ExactPoly::term(Monomial::new([(Var::N, -1), (Var::Y, 2)]).unwrap(), rat(3, 2));
        assert_eq!(got, want);
    }
}
