//! Colexicographic ranking of `k`-subsets of `{0, .., n-1}`.
//!
//! These index the wedge bases `e_S = e_{s_1} ∧ .. ∧ e_{s_k}` of exterior powers.

use crate::error::{Error, Result};
use crate::exact_linalg::binomial_u64;

#[derive(Debug, Clone)]
pub struct SubsetIndex {
    n: usize,
    k: usize,
    count: usize,
    // binom[m][j] = C(m, j) for m <= n, j <= k
    binom: Vec<Vec<usize>>,
}

impl SubsetIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let count = binomial_u64(n as u64, k as u64)
            .filter(|&c| c <= usize::MAX as u64)
            .ok_or(Error::Overflow("subset count"))? as usize;
        let binom = (0..=n)
            .map(|m| {
                (0..=k)
                    .map(|j| binomial_u64(m as u64, j as u64).unwrap_or(u64::MAX) as usize)
                    .collect()
            })
            .collect();
        Ok(SubsetIndex { n, k, count, binom })
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// Number of subsets, `C(n, k)`.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Rank of a strictly increasing subset.
    pub fn rank(&self, subset: &[usize]) -> usize {
        debug_assert_eq!(subset.len(), self.k);
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        subset.iter().enumerate().map(|(i, &s)| self.binom[s][i + 1]).sum()
    }

    pub fn unrank(&self, mut rank: usize) -> Vec<usize> {
        debug_assert!(rank < self.count);
        let mut out = vec![0; self.k];
        let mut top = self.n;
        for i in (0..self.k).rev() {
            // largest s < top with C(s, i+1) <= rank
            let mut s = top - 1;
            while self.binom[s][i + 1] > rank {
                s -= 1;
            }
            out[i] = s;
            rank -= self.binom[s][i + 1];
            top = s;
        }
        out
    }

    /// All subsets in rank order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.count).map(move |r| self.unrank(r))
    }
}

/// Sign of `e ∧ e_S` relative to the sorted basis vector: `(-1)^{#{s in S : s < e}}`.
/// `None` when `e ∈ S`.
pub fn insertion_sign(subset: &[usize], e: usize) -> Option<(i64, Vec<usize>)> {
    let pos = match subset.binary_search(&e) {
        Ok(_) => return None,
        Err(pos) => pos,
    };
    let mut merged = Vec::with_capacity(subset.len() + 1);
    merged.extend_from_slice(&subset[..pos]);
    merged.push(e);
    merged.extend_from_slice(&subset[pos..]);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((sign, merged))
}

/// Same quantity computed by sorting `(e, s_1, .., s_k)` with adjacent swaps
/// and tracking the parity.
pub fn insertion_sign_by_sorting(subset: &[usize], e: usize) -> Option<(i64, Vec<usize>)> {
    let mut seq = Vec::with_capacity(subset.len() + 1);
    seq.push(e);
    seq.extend_from_slice(subset);
    let mut sign = 1;
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            seq.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if seq.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, seq))
}
