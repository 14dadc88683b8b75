//! Exact scalars and sparse rank over prime fields.
//!
//! Every rank computed here is a rank over `F_p`. For an integer matrix the
//! rank modulo any prime never exceeds the rank over the rationals, so a
//! modular rank is always a valid input to a lower bound.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Two 15-bit primes used whenever the caller does not pick their own.
pub const DEFAULT_PRIMES: [u64; 2] = [32003, 32009];

/// `C(n, k)` as an arbitrary precision integer; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C(n, k)` in machine words, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * u128::from(n - k + i) / u128::from(i);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic modulo an odd prime below 2^32.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
}

/// A single residue tagged with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFieldScalar {
    pub value: u64,
    pub field: PrimeField,
}

impl PrimeFieldScalar {
    pub fn new(value: i64, field: PrimeField) -> Self {
        PrimeFieldScalar {
            value: field.reduce(value),
            field,
        }
    }
}

/// Sparse integer matrix in canonical coordinate form: entries sorted by
/// `(row, col)`, keys unique, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl IntMatrix {
    /// Builds a matrix from triplets, summing repeated keys and dropping
    /// entries that cancel to zero.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::BadMatrix(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            let slot = acc.entry((r, c)).or_insert(0);
            *slot = slot.checked_add(v).ok_or(Error::Overflow("matrix accumulation"))?;
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, 1)).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries
            .binary_search_by(|&(er, ec, _)| (er, ec).cmp(&(r, c)))
            .map(|i| self.entries[i].2)
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Relabels rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(Error::BadMatrix("permutation length mismatch".into()));
        }
        IntMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().map(|&(r, c, v)| (row_perm[r], col_perm[c], v)),
        )
    }

    /// Coordinate text dump: a `rows cols` header then one `r c v` line per entry.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }

    pub fn from_coordinate_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::BadMatrix("missing header".into()))?;
        let dims: Vec<usize> = parse_fields(header)?;
        if dims.len() != 2 {
            return Err(Error::BadMatrix(format!("bad header {header:?}")));
        }
        let mut triplets = Vec::new();
        for line in lines {
            let f: Vec<i64> = parse_fields(line)?;
            if f.len() != 3 || f[0] < 0 || f[1] < 0 {
                return Err(Error::BadMatrix(format!("bad entry line {line:?}")));
            }
            triplets.push((f[0] as usize, f[1] as usize, f[2]));
        }
        IntMatrix::from_triplets(dims[0], dims[1], triplets)
    }

    pub fn to_prime_field(&self, field: PrimeField) -> PrimeFieldMatrix {
        let entries = self
            .entries
            .iter()
            .filter_map(|&(r, c, v)| {
                let x = field.reduce(v);
                (x != 0).then_some((r, c, x))
            })
            .collect();
        PrimeFieldMatrix {
            rows: self.rows,
            cols: self.cols,
            field,
            entries,
        }
    }
}

fn parse_fields<T: std::str::FromStr>(line: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| Error::BadMatrix(format!("cannot parse {t:?}")))
        })
        .collect()
}

/// Sparse matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    entries: Vec<(usize, usize, u64)>,
}

impl PrimeFieldMatrix {
    /// Rejects out-of-range, duplicate and zero entries.
    pub fn new(rows: usize, cols: usize, field: PrimeField, mut entries: Vec<(usize, usize, u64)>) -> Result<Self> {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        for w in entries.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::BadMatrix(format!("duplicate entry ({}, {})", w[0].0, w[0].1)));
            }
        }
        for &(r, c, v) in &entries {
            if r >= rows || c >= cols {
                return Err(Error::BadMatrix(format!("entry ({r}, {c}) out of range")));
            }
            if v == 0 || v >= field.modulus() {
                return Err(Error::BadMatrix(format!("entry ({r}, {c}) is not a nonzero residue")));
            }
        }
        Ok(PrimeFieldMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[(usize, usize, u64)] {
        &self.entries
    }
}

/// Rank over `F_p` by sparse elimination.
///
/// Pivots are chosen Markowitz style: the shortest active row, then within
/// it the column with the fewest active entries. Ties go to the lowest
/// index so the elimination order is a pure function of the input.
pub fn rank_mod_p(m: &PrimeFieldMatrix) -> usize {
    let f = m.field;
    let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); m.rows];
    for &(r, c, v) in &m.entries {
        rows[r].push((c as u32, v));
    }
    let mut col_count = vec![0u32; m.cols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
    for (r, row) in rows.iter_mut().enumerate() {
        row.sort_unstable_by_key(|e| e.0);
        for &(c, _) in row.iter() {
            col_count[c as usize] += 1;
            col_rows[c as usize].push(r as u32);
        }
    }
    let mut active: Vec<u32> = (0..m.rows as u32).filter(|&r| !rows[r as usize].is_empty()).collect();
    let mut seen = vec![u32::MAX; m.rows];
    let mut stamp = 0u32;
    let mut rank = 0;
    let mut scratch: Vec<(u32, u64)> = Vec::new();

    while !active.is_empty() {
        // Shortest row; drop rows emptied by earlier steps.
        active.retain(|&r| !rows[r as usize].is_empty());
        let Some((pos, &pr)) = active
            .iter()
            .enumerate()
            .min_by_key(|&(_, &r)| (rows[r as usize].len(), r))
        else {
            break;
        };
        active.swap_remove(pos);
        let pivot_row = std::mem::take(&mut rows[pr as usize]);
        let &(pc, pv) = pivot_row
            .iter()
            .min_by_key(|&&(c, _)| (col_count[c as usize], c))
            .expect("active rows are nonempty");
        let pinv = f.inv(pv);
        rank += 1;
        for &(c, _) in &pivot_row {
            col_count[c as usize] -= 1;
        }

        stamp = stamp.wrapping_add(1);
        seen[pr as usize] = stamp;
        let targets = std::mem::take(&mut col_rows[pc as usize]);
        for r in targets {
            if seen[r as usize] == stamp {
                continue;
            }
            seen[r as usize] = stamp;
            let row = &rows[r as usize];
            let Ok(idx) = row.binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let factor = f.mul(row[idx].1, pinv);
            // row <- row - factor * pivot_row, merging sorted sparse vectors.
            scratch.clear();
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < pivot_row.len() {
                let take_row = j >= pivot_row.len() || (i < row.len() && row[i].0 < pivot_row[j].0);
                let take_piv = i >= row.len() || (j < pivot_row.len() && pivot_row[j].0 < row[i].0);
                if take_row {
                    scratch.push(row[i]);
                    i += 1;
                } else if take_piv {
                    let (c, v) = pivot_row[j];
                    scratch.push((c, f.sub(0, f.mul(factor, v))));
                    col_count[c as usize] += 1;
                    col_rows[c as usize].push(r);
                    j += 1;
                } else {
                    let (c, v) = row[i];
                    let nv = f.sub(v, f.mul(factor, pivot_row[j].1));
                    if nv != 0 {
                        scratch.push((c, nv));
                    } else {
                        col_count[c as usize] -= 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
            rows[r as usize].clone_from(&scratch);
        }
    }
    rank
}

/// Maximum of the modular ranks over `primes`; a certified lower bound for
/// the rational rank of `m`.
pub fn rank_certified(m: &IntMatrix, primes: &[u64]) -> Result<usize> {
    if primes.is_empty() {
        return Err(Error::NoPrimes);
    }
    let fields = primes.iter().map(|&p| PrimeField::new(p)).collect::<Result<Vec<_>>>()?;
    Ok(fields
        .into_iter()
        .map(|f| rank_mod_p(&m.to_prime_field(f)))
        .max()
        .unwrap_or(0))
}

/// Modular ranks for each prime, in order.
pub fn ranks_per_prime(m: &IntMatrix, primes: &[u64]) -> Result<Vec<usize>> {
    if primes.is_empty() {
        return Err(Error::NoPrimes);
    }
    primes
        .iter()
        .map(|&p| Ok(rank_mod_p(&m.to_prime_field(PrimeField::new(p)?))))
        .collect()
}
