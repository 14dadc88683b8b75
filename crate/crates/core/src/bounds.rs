//! Closed-form border rank lower bounds for `M⟨n,n,w⟩`.
//!
//! `R(M⟨n,n,w⟩) ≥ 2nw − w + m − ⌊w·C(n−1+m, m−1) / C(2n−2, n−1)⌋` for `0 < m < n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub n: u64,
    pub w: u64,
    pub m: u64,
    #[serde(serialize_with = "as_string")]
    pub bound: BigInt,
    /// The floor term.
    #[serde(serialize_with = "as_string")]
    pub correction: BigInt,
    /// `bound − (2n² − n + 1)`; only meaningful for `w = n`.
    #[serde(serialize_with = "as_string")]
    pub improvement: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `2n² − n + 1`.
pub fn previous_bound(n: u64) -> BigInt {
    let n = BigInt::from(n);
    BigInt::from(2) * &n * &n - &n + 1
}

fn assemble(n: u64, w: u64, m: u64, correction: BigInt) -> BoundResult {
    let base = BigInt::from(2) * BigInt::from(n) * BigInt::from(w) - BigInt::from(w) + BigInt::from(m);
    let bound = base - &correction;
    let improvement = &bound - previous_bound(n);
    BoundResult {
        n,
        w,
        m,
        bound,
        correction,
        improvement,
    }
}

pub fn theorem_bound(n: u64, w: u64, m: u64) -> Result<BoundResult> {
    if m == 0 || m >= n {
        return Err(Error::OutOfRange(format!("need 0 < m < n, got m = {m}, n = {n}")));
    }
    if w == 0 {
        return Err(Error::OutOfRange("w must be positive".into()));
    }
    let num = BigInt::from(w) * binomial(n - 1 + m, m as i64 - 1);
    let den = binomial(2 * n - 2, n as i64 - 1);
    Ok(assemble(n, w, m, num.div_floor(&den)))
}

/// Maximizes [`theorem_bound`] over `m ∈ [1, n−1]`, smallest `m` on ties.
///
/// The numerators `C(n−1+m, m−1)` are updated incrementally so large `n`
/// costs one big division per `m`.
pub fn best_bound(n: u64, w: u64) -> Result<BoundResult> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("need n >= 2, got {n}")));
    }
    if w == 0 {
        return Err(Error::OutOfRange("w must be positive".into()));
    }
    let den = binomial(2 * n - 2, n as i64 - 1);
    let wb = BigInt::from(w);
    let mut numer = BigInt::from(1); // C(n, 0) at m = 1
    let mut best: Option<(BigInt, u64, BigInt)> = None;
    for m in 1..n {
        if m > 1 {
            // C(n−1+m, m−1) = C(n−2+m, m−2) · (n−1+m) / (m−1)
            numer = numer * (n - 1 + m) / (m - 1);
        }
        let corr = (&wb * &numer).div_floor(&den);
        let value = BigInt::from(m) - &corr;
        if best.as_ref().is_none_or(|(v, _, _)| value > *v) {
            best = Some((value, m, corr));
        }
    }
    let (_, m, corr) = best.expect("n >= 2 gives at least one m");
    Ok(assemble(n, w, m, corr))
}

/// `⌈log₂ n⌉` as the bit length of `n − 1`.
pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        u64::from(64 - (n - 1).leading_zeros())
    }
}

/// `m = n − ⌈log₂ n⌉ − 1`.
pub fn log_m_choice(n: u64) -> Result<u64> {
    let c = ceil_log2(n) + 1;
    if n < 2 || n <= c {
        return Err(Error::OutOfRange(format!("n = {n} is too small for a positive m")));
    }
    Ok(n - c)
}

/// `2n² − ⌈log₂ n⌉ − 1`.
pub fn log_choice_guarantee(n: u64) -> BigInt {
    let n2 = BigInt::from(n) * BigInt::from(n);
    BigInt::from(2) * n2 - BigInt::from(ceil_log2(n)) - 1
}

/// `n · C(2n−1−c, n) < C(2n−2, n−1)`, i.e. the floor term vanishes at `w = n`, `m = n − c`.
pub fn ratio_term_below_one(n: u64, c: u64) -> Result<bool> {
    if c == 0 || c >= n {
        return Err(Error::OutOfRange(format!("need 1 <= c < n, got c = {c}, n = {n}")));
    }
    let lhs = BigInt::from(n) * binomial(2 * n - 1 - c, n as i64);
    Ok(lhs < binomial(2 * n - 2, n as i64 - 1))
}

/// Reference bound table, `(n, bound, improvement)`.
pub const REFERENCE_TABLE: [(u64, u64, u64); 10] = [
    (4, 29, 0),
    (5, 47, 1),
    (6, 69, 2),
    (7, 95, 3),
    (8, 122, 3),
    (9, 158, 4),
    (10, 196, 6),
    (100, 19_992, 92),
    (1000, 1_999_989, 989),
    (10_000, 199_999_985, 9985),
];

/// One row of the bound table: the optimal-`m` bound next to the
/// `m = n − ⌈log₂ n⌉ − 1` bound and, when known, the reference value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub best: BoundResult,
    pub log_choice: Option<BoundResult>,
    pub reference_bound: Option<u64>,
    pub reference_improvement: Option<u64>,
    /// Reference row disagrees with the computed optimum.
    pub mismatch: bool,
}

pub fn table_row(n: u64) -> Result<TableRow> {
    let best = best_bound(n, n)?;
    let log_choice = log_m_choice(n).ok().map(|m| theorem_bound(n, n, m)).transpose()?;
    let reference = REFERENCE_TABLE.iter().find(|r| r.0 == n);
    let mismatch =
        reference.is_some_and(|&(_, b, imp)| best.bound != BigInt::from(b) || best.improvement != BigInt::from(imp));
    Ok(TableRow {
        best,
        log_choice,
        reference_bound: reference.map(|r| r.1),
        reference_improvement: reference.map(|r| r.2),
        mismatch,
    })
}

impl BoundResult {
    pub fn correction_is_zero(&self) -> bool {
        self.correction.is_zero()
    }
}
