//! Aperiodic circular words: brute-force necklace counts, the alternating
//! count of coin arrangements, and the Witt product.

use crate::algebra::{int, ExactPoly, Monomial, Var};
use crate::digraph::least_rotation;
use crate::error::{check_scale, Error, Result};

fn distinct_permutations(content: &[usize]) -> Vec<Vec<u8>> {
    fn go(left: &mut [usize], cur: &mut Vec<u8>, total: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for letter in 0..left.len() {
            if left[letter] > 0 {
                left[letter] -= 1;
                cur.push(letter as u8);
                go(left, cur, total, out);
                cur.pop();
                left[letter] += 1;
            }
        }
    }
    let total = content.iter().sum();
    let mut out = Vec::new();
    go(&mut content.to_vec(), &mut Vec::new(), total, &mut out);
    out
}

/// Aperiodic circular words with `content[i]` copies of letter `i`, each in
/// its least rotation.
pub fn aperiodic_necklaces(content: &[usize]) -> Vec<Vec<u8>> {
    distinct_permutations(content)
        .into_iter()
        .filter(|w| {
            !w.is_empty()
                && least_rotation(w) == *w
                && (1..w.len()).all(|r| w[r..].iter().chain(&w[..r]).ne(w.iter()))
        })
        .collect()
}

/// Number of aperiodic circular words with the given letter counts.
pub fn necklace_count(content: &[usize]) -> u64 {
    aperiodic_necklaces(content).len() as u64
}

fn sub_contents(content: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in content {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=c).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&k| k > 0));
    out
}

/// `b[k]`: ways to split the coins into `k` distinct aperiodic circular
/// words using every coin.
pub fn coin_arrangement_counts(content: &[usize]) -> Vec<u64> {
    let total: usize = content.iter().sum();
    let words: Vec<(Vec<usize>, Vec<u8>)> = sub_contents(content)
        .into_iter()
        .flat_map(|c| aperiodic_necklaces(&c).into_iter().map(move |w| (c.clone(), w)))
        .collect();
    let mut b = vec![0u64; total + 1];
    fn go(words: &[(Vec<usize>, Vec<u8>)], from: usize, left: &mut [usize], k: usize, b: &mut [u64]) {
        if left.iter().all(|&x| x == 0) {
            b[k] += 1;
            return;
        }
        for i in from..words.len() {
            let c = &words[i].0;
            if c.iter().zip(left.iter()).all(|(a, l)| a <= l) {
                for (l, a) in left.iter_mut().zip(c) {
                    *l -= a;
                }
                go(words, i + 1, left, k + 1, b);
                for (l, a) in left.iter_mut().zip(c) {
                    *l += a;
                }
            }
        }
    }
    go(&words, 0, &mut content.to_vec(), 0, &mut b);
    b
}

/// `Σ_k (-1)^{k+1} b_k` for a coin multiset of total size 2 to 7.
pub fn coin_lemma_check(content: &[usize]) -> Result<i64> {
    let total: usize = content.iter().sum();
    if total < 2 {
        return Err(Error::Config("the coin multiset needs at least two coins".into()));
    }
    check_scale("coins", total, 7)?;
    Ok(coin_arrangement_counts(content)
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
        .sum())
}

fn exponent_vectors(k: usize, max_degree: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let used: usize = p.iter().sum();
                (0..=max_degree - used).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<usize>() >= 1);
    out
}

/// `∏_m (1 - z^m)^{M(m)}` over exponent vectors of total degree 1 to
/// `max_degree`, truncated at `max_degree`, in variables `z1 … zk`.
pub fn witt_product(k: usize, max_degree: usize) -> Result<ExactPoly> {
    check_scale("Witt variables", k, 3)?;
    check_scale("Witt degree", max_degree, 6)?;
    let keep = |m: &Monomial| m.total_degree() as usize <= max_degree;
    let mut acc = ExactPoly::one();
    for m in exponent_vectors(k, max_degree) {
        let count = necklace_count(&m);
        if count == 0 {
            continue;
        }
        let z = Monomial::from_pairs_unchecked(
            m.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (Var::Zi(i as u16 + 1), e as i32)),
        );
        let factor = ExactPoly::one() - ExactPoly::term(z, int(1));
        for _ in 0..count {
            acc = acc.mul_filtered(&factor, keep);
        }
    }
    Ok(acc)
}

/// Whether the truncated Witt product equals `1 - z1 - … - zk`.
pub fn witt_check(k: usize, max_degree: usize) -> Result<bool> {
    let mut want = ExactPoly::one();
    if max_degree >= 1 {
        for i in 1..=k {
            want = want - ExactPoly::var(Var::Zi(i as u16));
        }
    }
    Ok(witt_product(k, max_degree)? == want)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklaces() {
        assert_eq!(necklace_count(&[1]), 1);
        assert_eq!(necklace_count(&[2]), 0);
        assert_eq!(necklace_count(&[1, 1]), 1);
        assert_eq!(necklace_count(&[2, 2]), 1);
        // Binary Lyndon words of length 6 split by weight: 1, 2, 3, 2, 1.
        let by_weight: Vec<u64> = (1..=5).map(|a| necklace_count(&[a, 6 - a])).collect();
        assert_eq!(by_weight, vec![1, 2, 3, 2, 1]);
    }

    #[test]
    fn coin_examples() {
        assert_eq!(coin_arrangement_counts(&[1, 1])[1..], [1u64, 1]);
        assert_eq!(coin_lemma_check(&[1, 1]).unwrap(), 0);
        assert_eq!(coin_arrangement_counts(&[2])[1..], [0u64, 0]);
        assert_eq!(coin_lemma_check(&[2]).unwrap(), 0);
        assert!(coin_lemma_check(&[1]).is_err());
    }

    #[test]
    fn witt_small() {
        assert!(witt_check(1, 6).unwrap());
        assert!(witt_check(2, 4).unwrap());
        assert_eq!(
            witt_product(1, 3).unwrap(),
            ExactPoly::one() - ExactPoly::var(Var::Zi(1))
        );
    }
}
