//! Koszul flattenings `T_A^{∧p}: B* ⊗ Λ^p Ã → Λ^{p+1} Ã ⊗ C`.
//!
//! Rows are indexed by `rank(P) · c + k` for a `(p+1)`-subset `P` and C-index
//! `k`; columns by `j · C(ã, p) + rank(S)` for B-index `j` and `p`-subset `S`.
//! Subsets are ranked colexicographically.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact_linalg::{binomial, rank_certified, IntMatrix};
use crate::subset::{insertion_sign, insertion_sign_by_sorting, SubsetIndex};
use crate::tensor::{matmul_tensor, young_reduce, MatMulSpec, Tensor3, YoungDiagram};

/// Linear map applied to the A factor before flattening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Identity,
    /// `map[a]` is the image basis vector of A-slot `a`, or `None` if the
    /// slot is sent to zero.
    Coordinates {
        target_dim: usize,
        map: Vec<Option<usize>>,
    },
}

/// How the sign of `e ∧ e_S` is computed. Both give the same matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WedgeSign {
    /// `(-1)^{#{s ∈ S : s < e}}`
    #[default]
    Laplace,
    /// Sort `(e, s_1, .., s_p)` by adjacent swaps.
    InsertSort,
}

#[derive(Debug, Clone)]
pub struct KoszulMatrixSpec {
    pub tensor: Tensor3,
    pub p: usize,
    pub projection: Projection,
}

impl KoszulMatrixSpec {
    pub fn a_tilde(&self) -> usize {
        match &self.projection {
            Projection::Identity => self.tensor.dims()[0],
            Projection::Coordinates { target_dim, .. } => *target_dim,
        }
    }

    fn validate(&self) -> Result<()> {
        let at = self.a_tilde();
        if self.p >= at {
            return Err(Error::OutOfRange(format!(
                "wedge degree p = {} needs p < dim Ã = {at}",
                self.p
            )));
        }
        if let Projection::Coordinates { target_dim, map } = &self.projection {
            if map.len() != self.tensor.dims()[0] {
                return Err(Error::OutOfRange("projection must be defined on every A-slot".into()));
            }
            if map.iter().flatten().any(|&t| t >= *target_dim) {
                return Err(Error::OutOfRange("projection image out of range".into()));
            }
        }
        Ok(())
    }

    fn image(&self, a: usize) -> Option<usize> {
        match &self.projection {
            Projection::Identity => Some(a),
            Projection::Coordinates { map, .. } => map[a],
        }
    }
}

/// 1-based image `i + j - 1` of the slot `u^i ⊗ v_j`.
pub fn phi_image(i: usize, j: usize) -> usize {
    i + j - 1
}

/// The projection `A = U*⊗V → C^{2n-1}` sending `u^i ⊗ v_j` to `e_{i+j-1}`,
/// in the A-slot layout of [`MatMulSpec`] (0-based).
pub fn phi_projection(n: usize) -> Result<Projection> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let map = (0..n * n).map(|a| Some(a / n + a % n)).collect();
    Ok(Projection::Coordinates {
        target_dim: 2 * n - 1,
        map,
    })
}

pub fn koszul_matrix(spec: &KoszulMatrixSpec) -> Result<IntMatrix> {
    koszul_matrix_with(spec, WedgeSign::Laplace)
}

pub fn koszul_matrix_with(spec: &KoszulMatrixSpec, sign: WedgeSign) -> Result<IntMatrix> {
    spec.validate()?;
    let at = spec.a_tilde();
    let [_, b, c] = spec.tensor.dims();
    let src = SubsetIndex::new(at, spec.p)?;
    let dst = SubsetIndex::new(at, spec.p + 1)?;
    let rows = dst.len().checked_mul(c).ok_or(Error::Overflow("koszul rows"))?;
    let cols = src.len().checked_mul(b).ok_or(Error::Overflow("koszul cols"))?;

    let mut by_b: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); b];
    for &(i, j, k, t) in spec.tensor.entries() {
        if let Some(e) = spec.image(i) {
            by_b[j].push((e, k, t));
        }
    }
    let insert = match sign {
        WedgeSign::Laplace => insertion_sign,
        WedgeSign::InsertSort => insertion_sign_by_sorting,
    };
    let mut triplets = Vec::new();
    for s_rank in 0..src.len() {
        let subset = src.unrank(s_rank);
        for (j, terms) in by_b.iter().enumerate() {
            let col = j * src.len() + s_rank;
            for &(e, k, t) in terms {
                if let Some((sgn, merged)) = insert(&subset, e) {
                    triplets.push((dst.rank(&merged) * c + k, col, sgn * t));
                }
            }
        }
    }
    IntMatrix::from_triplets(rows, cols, triplets)
}

/// `⌈rank · w / C(ã - 1, p)⌉`.
pub fn koszul_bound(rank: u64, a_tilde: u64, p: u64, w_factor: u64) -> Result<u64> {
    if a_tilde == 0 || p > a_tilde - 1 {
        return Err(Error::OutOfRange(format!(
            "need 0 <= p <= ã - 1, got p = {p}, ã = {a_tilde}"
        )));
    }
    let num = BigInt::from(rank) * w_factor;
    let den = binomial(a_tilde - 1, p as i64);
    num.div_ceil(&den).to_u64().ok_or(Error::Overflow("koszul bound"))
}

/// Flattening `[φ(M⟨n,n,1⟩ with the given A-slots zeroed)]^{∧ n-1}`.
/// Slots are 1-based `(i, j)` meaning `u^i ⊗ v_j`.
pub fn reduced_flattening_for_slots(n: usize, slots: &BTreeSet<(usize, usize)>) -> Result<IntMatrix> {
    let spec = MatMulSpec::square(n, 1)?;
    if slots.iter().any(|&(i, j)| i == 0 || j == 0 || i > n || j > n) {
        return Err(Error::OutOfRange("slot outside the n x n grid".into()));
    }
    let removed = slots.iter().map(|&(i, j)| spec.a_index(i - 1, j - 1)).collect();
    let tensor = matmul_tensor(&spec).remove_a_slots(&removed);
    koszul_matrix(&KoszulMatrixSpec {
        tensor,
        p: n - 1,
        projection: phi_projection(n)?,
    })
}

pub fn reduced_flattening(n: usize, lambda: &YoungDiagram) -> Result<IntMatrix> {
    let spec = MatMulSpec::square(n, 1)?;
    let tensor = young_reduce(&matmul_tensor(&spec), &spec, lambda)?;
    koszul_matrix(&KoszulMatrixSpec {
        tensor,
        p: n - 1,
        projection: phi_projection(n)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatteningRank {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// `n · C(2n-1, n-1) - rank`
    pub kernel_dim: usize,
}

pub fn reduced_flattening_rank(n: usize, lambda: &YoungDiagram, primes: &[u64]) -> Result<FlatteningRank> {
    let m = reduced_flattening(n, lambda)?;
    let rank = rank_certified(&m, primes)?;
    Ok(FlatteningRank {
        rows: m.rows(),
        cols: m.cols(),
        rank,
        kernel_dim: m.cols() - rank,
    })
}
