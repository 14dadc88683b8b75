//! Triangular structure of the reduced Koszul flattening of `M⟨n,n,1⟩`.
//!
//! Target basis vectors are labelled `(P, l)` with `P` an `n`-subset of
//! `[2n-1]` and `l ∈ [n]` the `u`-index; source vectors `(S, k)` with `S` an
//! `(n-1)`-subset and `k ∈ [n]` the `v`-index. All labels here are 1-based.
//! The basis vector `(P \ {p_l}, 1 + p_l - l)` maps to `±(P, l)` plus terms
//! that are strictly smaller in the order below, so the flattening is
//! triangular and removing the slot `u^l ⊗ v_{p_l - l + 1}` kills exactly the
//! diagonal entries it feeds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_linalg::{binomial, IntMatrix};
use crate::koszul::{reduced_flattening, reduced_flattening_for_slots};
use crate::partition::partitions_of;
use crate::subset::SubsetIndex;
use crate::tensor::YoungDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetBasisLabel {
    pub p_set: Vec<usize>,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceBasisLabel {
    pub s_set: Vec<usize>,
    pub k: usize,
}

impl TargetBasisLabel {
    pub fn new(p_set: Vec<usize>, l: usize) -> Self {
        TargetBasisLabel { p_set, l }
    }

    fn prefix(&self, len: usize) -> &[usize] {
        &self.p_set[..len]
    }
}

/// `(P₁,l₁) < (P₂,l₂)`: with `l = min(l₁,l₂)`, the `l` smallest elements of
/// `P₁` come strictly after those of `P₂` lexicographically, or they agree
/// and `l₁ < l₂`.
pub fn target_order_less(a: &TargetBasisLabel, b: &TargetBasisLabel) -> bool {
    let l = a.l.min(b.l);
    let (pa, pb) = (a.prefix(l), b.prefix(l));
    if pa != pb {
        return pa > pb;
    }
    a.l < b.l
}

/// Total preorder matching [`target_order_less`]; labels sharing `l` and the
/// first `l` elements compare equal.
pub fn target_order_cmp(a: &TargetBasisLabel, b: &TargetBasisLabel) -> Ordering {
    let l = a.l.min(b.l);
    match b.prefix(l).cmp(a.prefix(l)) {
        Ordering::Equal => a.l.cmp(&b.l),
        other => other,
    }
}

/// `(P \ {p_l}, 1 + p_l - l)`, or `None` when the `v`-index falls outside `[1, n]`.
pub fn leading_source(target: &TargetBasisLabel, n: usize) -> Option<SourceBasisLabel> {
    let l = target.l;
    if l == 0 || l > target.p_set.len() {
        return None;
    }
    let pl = target.p_set[l - 1];
    let k = (1 + pl).checked_sub(l)?;
    if k == 0 || k > n {
        return None;
    }
    let mut s_set = target.p_set.clone();
    s_set.remove(l - 1);
    Some(SourceBasisLabel { s_set, k })
}

/// `g(i, j) = C(n-i+j-1, j-1) · C(n+i-j-1, i-1)`; zero when a top index is negative.
pub fn g(n: usize, i: usize, j: usize) -> BigInt {
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let top1 = n - i + j - 1;
    let top2 = n + i - j - 1;
    if top1 < 0 || top2 < 0 || i < 1 || j < 1 {
        return BigInt::zero();
    }
    binomial(top1 as u64, j - 1) * binomial(top2 as u64, i - 1)
}

/// Visits every `k`-subset of `{1, .., n}` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        f(&cur);
        let Some(pos) = (0..k).rev().find(|&t| cur[t] < n - k + t + 1) else {
            return;
        };
        cur[pos] += 1;
        for t in pos + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Number of `n`-subsets of `[2n-1]` whose `j`-th smallest element is `n - i + j`,
/// by enumeration.
pub fn count_diagonal_zeros(n: usize, i: usize, j: usize) -> BigInt {
    if j == 0 || j > n || i == 0 || n + j <= i {
        return BigInt::zero();
    }
    let target = n + j - i;
    let mut count: u64 = 0;
    for_each_subset(2 * n - 1, n, |p| {
        if p[j - 1] == target {
            count += 1;
        }
    });
    BigInt::from(count)
}

/// `table[j-1][v-1]` = number of `n`-subsets of `[2n-1]` with `j`-th smallest
/// element `v`; one enumeration answers [`count_diagonal_zeros`] for all `(i, j)`.
pub fn diagonal_zero_table(n: usize) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; 2 * n - 1]; n];
    for_each_subset(2 * n - 1, n, |p| {
        for (j, &v) in p.iter().enumerate() {
            table[j][v - 1] += 1;
        }
    });
    table
}

/// `f_λ = Σ g(r, c)` over the display cells `(r, c)` of `λ`.
pub fn f_lambda(n: usize, lambda: &YoungDiagram) -> BigInt {
    lambda.cells().map(|(r, c)| g(n, r, c)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxF {
    pub max: BigInt,
    pub maximizers: Vec<Vec<usize>>,
}

/// Maximum of `f_λ` over all partitions of `m` (all fit since `m < n`).
pub fn max_f(n: usize, m: usize) -> Result<MaxF> {
    if m == 0 || m >= n {
        return Err(Error::OutOfRange(format!("need 0 < m < n, got m = {m}, n = {n}")));
    }
    let mut best = MaxF {
        max: BigInt::from(-1),
        maximizers: Vec::new(),
    };
    for rows in partitions_of(m) {
        let f = f_lambda(n, &YoungDiagram::new(rows.clone(), n)?);
        match f.cmp(&best.max) {
            Ordering::Greater => {
                best.max = f;
                best.maximizers = vec![rows];
            }
            Ordering::Equal => best.maximizers.push(rows),
            Ordering::Less => {}
        }
    }
    Ok(best)
}

/// Whether the single row or single column attains `max f_λ`, and that maximum
/// equals `C(n-1+m, m-1)`.
pub fn max_f_is_hook_free(n: usize, m: usize) -> Result<bool> {
    let best = max_f(n, m)?;
    let row = vec![m];
    let col = vec![1; m];
    let attained = best.maximizers.contains(&row) || best.maximizers.contains(&col);
    Ok(attained && best.max == binomial((n - 1 + m) as u64, m as i64 - 1))
}

fn check_main_pre(i: usize, j: usize, n: usize) -> Result<()> {
    if i < 2 || i > j || n <= i * j {
        return Err(Error::OutOfRange(format!(
            "need 2 <= i <= j and n > ij, got i = {i}, j = {j}, n = {n}"
        )));
    }
    Ok(())
}

/// `g(1, ij) ≥ g(i, j)` evaluated exactly.
pub fn check_main_inequality(i: usize, j: usize, n: usize) -> Result<bool> {
    check_main_pre(i, j, n)?;
    Ok(g(n, 1, i * j) >= g(n, i, j))
}

/// `(n-1+ij)/n ≥ (n-j+i)/(n-j+1) · (n-i+j)/(n-i+1)`, cross-multiplied.
pub fn check_ratio_inequality(i: usize, j: usize, n: usize) -> Result<bool> {
    check_main_pre(i, j, n)?;
    let (i, j, n) = (i as i128, j as i128, n as i128);
    let lhs = (n - 1 + i * j) * (n - j + 1) * (n - i + 1);
    let rhs = n * (n - j + i) * (n - i + j);
    Ok(lhs >= rhs)
}

/// Labels of the rows and columns of the reduced flattening, in matrix order.
pub struct FlatteningLabels {
    pub n: usize,
    pub targets: Vec<TargetBasisLabel>,
    pub sources: Vec<SourceBasisLabel>,
    target_subsets: SubsetIndex,
    source_subsets: SubsetIndex,
}

impl FlatteningLabels {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange("n must be positive".into()));
        }
        let target_subsets = SubsetIndex::new(2 * n - 1, n)?;
        let source_subsets = SubsetIndex::new(2 * n - 1, n - 1)?;
        let mut targets = Vec::with_capacity(target_subsets.len() * n);
        for subset in target_subsets.iter() {
            for l in 1..=n {
                targets.push(TargetBasisLabel::new(subset.iter().map(|x| x + 1).collect(), l));
            }
        }
        let mut sources = Vec::with_capacity(source_subsets.len() * n);
        for k in 1..=n {
            for subset in source_subsets.iter() {
                sources.push(SourceBasisLabel {
                    s_set: subset.iter().map(|x| x + 1).collect(),
                    k,
                });
            }
        }
        Ok(FlatteningLabels {
            n,
            targets,
            sources,
            target_subsets,
            source_subsets,
        })
    }

    pub fn target_row(&self, t: &TargetBasisLabel) -> usize {
        let zero: Vec<usize> = t.p_set.iter().map(|x| x - 1).collect();
        self.target_subsets.rank(&zero) * self.n + (t.l - 1)
    }

    pub fn source_col(&self, s: &SourceBasisLabel) -> usize {
        let zero: Vec<usize> = s.s_set.iter().map(|x| x - 1).collect();
        (s.k - 1) * self.source_subsets.len() + self.source_subsets.rank(&zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularReport {
    pub size: usize,
    /// The leading-source map is a bijection from target to source labels.
    pub bijective: bool,
    /// Entries strictly below the diagonal after reordering.
    pub below_diagonal: usize,
    /// Diagonal entries that are zero.
    pub zero_diagonal: usize,
}

impl TriangularReport {
    pub fn is_upper_triangular(&self) -> bool {
        self.bijective && self.below_diagonal == 0
    }
}

/// Reorders the flattening of `M^λ⟨n,n,1⟩` with targets ascending in the
/// `(P, l)` order and each column placed at its leading target, then counts
/// violations of upper triangularity.
pub fn triangular_report(n: usize, lambda: &YoungDiagram) -> Result<TriangularReport> {
    let labels = FlatteningLabels::new(n)?;
    let m = reduced_flattening(n, lambda)?;
    triangular_report_for(&labels, &m)
}

fn triangular_report_for(labels: &FlatteningLabels, m: &IntMatrix) -> Result<TriangularReport> {
    let n = labels.n;
    let size = labels.targets.len();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| {
        let (ta, tb) = (&labels.targets[a], &labels.targets[b]);
        target_order_cmp(ta, tb).then_with(|| ta.p_set.cmp(&tb.p_set))
    });
    // row r of m (target label index r) goes to position row_pos[r]
    let mut row_pos = vec![0; size];
    for (pos, &t) in order.iter().enumerate() {
        row_pos[labels.target_row(&labels.targets[t])] = pos;
    }
    let mut col_pos = vec![usize::MAX; labels.sources.len()];
    let mut bijective = labels.sources.len() == size;
    for (pos, &t) in order.iter().enumerate() {
        match leading_source(&labels.targets[t], n) {
            Some(s) => {
                let c = labels.source_col(&s);
                if col_pos[c] != usize::MAX {
                    bijective = false;
                }
                col_pos[c] = pos;
            }
            None => bijective = false,
        }
    }
    if !bijective {
        return Ok(TriangularReport {
            size,
            bijective,
            below_diagonal: 0,
            zero_diagonal: 0,
        });
    }
    let permuted = m.permute(&row_pos, &col_pos)?;
    let below_diagonal = permuted.entries().iter().filter(|&&(r, c, _)| r > c).count();
    let zero_diagonal = (0..size).filter(|&d| permuted.get(d, d) == 0).count();
    Ok(TriangularReport {
        size,
        bijective,
        below_diagonal,
        zero_diagonal,
    })
}

/// Upper triangularity of the unreduced flattening with a nonzero diagonal.
pub fn verify_upper_triangular(n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::OutOfRange("n must be at least 2".into()));
    }
    let r = triangular_report(n, &YoungDiagram::empty(n))?;
    Ok(r.is_upper_triangular() && r.zero_diagonal == 0)
}

/// Triangularity survives the reduction by `λ` and exactly `f_λ` diagonal
/// entries are lost.
pub fn verify_upper_triangular_reduced(n: usize, lambda: &YoungDiagram) -> Result<bool> {
    if n < 2 {
        return Err(Error::OutOfRange("n must be at least 2".into()));
    }
    let r = triangular_report(n, lambda)?;
    Ok(r.is_upper_triangular() && BigInt::from(r.zero_diagonal) == f_lambda(n, lambda))
}

/// Diagonal entries lost when only the slot `u^i ⊗ v_j` (1-based) is removed.
pub fn zero_diagonal_for_slot(n: usize, i: usize, j: usize) -> Result<usize> {
    let labels = FlatteningLabels::new(n)?;
    let m = reduced_flattening_for_slots(n, &[(i, j)].into_iter().collect())?;
    Ok(triangular_report_for(&labels, &m)?.zero_diagonal)
}
