//! Acceptance criteria 1-10. Each criterion is its own test and prints one
//! `criterion N: PASS|FAIL` line to stderr.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use mmlb_core::bounds::{ceil_log2, log_m_choice, table_row, theorem_bound, REFERENCE_TABLE};
use mmlb_core::compression::{
    dim_y, min_aprime_threshold, surjdim_holds, top_chern_contributions, top_chern_degree, CompressionProfile,
};
use mmlb_core::koszul::{koszul_matrix, reduced_flattening_rank, KoszulMatrixSpec, Projection};
use mmlb_core::order::{
    check_main_inequality, check_ratio_inequality, count_diagonal_zeros, diagonal_zero_table, f_lambda, g,
    max_f_is_hook_free, verify_upper_triangular,
};
use mmlb_core::partition::partitions_of;
use mmlb_core::{rank_certified, BigInt, Tensor3, YoungDiagram};
use rand::{Rng, SeedableRng};

const PRIMES: [u64; 2] = [32003, 32009];

fn report(id: u32, title: &str, failures: &[String], elapsed: Duration, limit: Option<Duration>) {
    let slow = limit.is_some_and(|l| elapsed > l);
    let status = if failures.is_empty() && !slow { "PASS" } else { "FAIL" };
    let mut line = format!("criterion {id}: {status} {title} ({elapsed:.2?})\n");
    for f in failures.iter().take(20) {
        line.push_str(&format!("  {f}\n"));
    }
    if slow {
        line.push_str(&format!("  exceeded time limit {:?}\n", limit.unwrap()));
    }
    // the raw handle bypasses the harness capture, so the line shows without --nocapture
    std::io::stderr().write_all(line.as_bytes()).ok();
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
    assert!(!slow, "criterion {id} exceeded {limit:?}");
}

fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// Bound by direct search over `m`, recomputing every binomial from scratch.
fn oracle_best(n: i64) -> (i64, BigInt) {
    let den = choose(2 * n - 2, n - 1);
    let mut best: Option<(BigInt, i64)> = None;
    for m in 1..n {
        let num = BigInt::from(n) * choose(n - 1 + m, m - 1);
        let floor = &num / &den;
        let b = BigInt::from(2 * n * n - n + m) - floor;
        if best.as_ref().is_none_or(|(v, _)| &b > v) {
            best = Some((b, m));
        }
    }
    let (b, m) = best.unwrap();
    (m, b)
}

#[test]
fn criterion_01_table() {
    let t0 = Instant::now();
    let rows: Vec<_> = REFERENCE_TABLE.iter().map(|r| table_row(r.0).unwrap()).collect();
    let elapsed = t0.elapsed();
    let mut fails = Vec::new();
    for (&(n, bound, improvement), row) in REFERENCE_TABLE.iter().zip(rows) {
        // from-scratch binomials are quadratic in n; n=10000 is checked against the reference value only
        let oracle = if n <= 1000 {
            oracle_best(n as i64).1
        } else {
            row.best.bound.clone()
        };
        if row.best.bound != oracle {
            fails.push(format!(
                "n={n}: best_bound {} disagrees with oracle {oracle}",
                row.best.bound
            ));
        }
        let baseline = BigInt::from(2 * n * n - n + 1);
        if row.best.improvement != &row.best.bound - &baseline {
            fails.push(format!("n={n}: improvement field inconsistent with bound"));
        }
        if n == 8 {
            // reference 122 is reported beside the computed optimum and flagged
            if row.reference_bound != Some(122) {
                fails.push("n=8: reference value not carried".into());
            }
            if row.best.bound != BigInt::from(122) && !row.mismatch {
                fails.push(format!(
                    "n=8: computed {} differs from 122 without a flag",
                    row.best.bound
                ));
            }
            println!(
                "  n=8: computed {} (m={}), reference 122, flagged={}",
                row.best.bound, row.best.m, row.mismatch
            );
            continue;
        }
        if row.best.bound != BigInt::from(bound) {
            fails.push(format!("n={n}: bound {} != reference {bound}", row.best.bound));
        }
        if row.best.improvement != BigInt::from(improvement) {
            fails.push(format!(
                "n={n}: improvement {} != reference {improvement} (bound {} - (2n²-n+1) = {})",
                row.best.improvement,
                row.best.bound,
                &row.best.bound - &baseline
            ));
        }
    }
    // the limit covers table generation; the oracle search is untimed
    report(1, "bound table", &fails, elapsed, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_02_log_choice() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    for n in 4u64..=256 {
        let m = log_m_choice(n).unwrap();
        // independent ⌈log₂ n⌉
        let mut c = 0u64;
        while (1u64 << c) < n {
            c += 1;
        }
        if ceil_log2(n) != c || m != n - c - 1 {
            fails.push(format!("n={n}: m={m}, ⌈log₂⌉={}", ceil_log2(n)));
            continue;
        }
        let b = theorem_bound(n, n, m).unwrap().bound;
        let floor = BigInt::from(2 * n * n - c - 1);
        if b < floor {
            fails.push(format!("n={n}: {b} < {floor}"));
        }
    }
    report(
        2,
        "log-choice guarantee",
        &fails,
        t0.elapsed(),
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_03_surjectivity() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    for n in 2..=6usize {
        let expect = n * choose(2 * n as i64 - 1, n as i64).to_string().parse::<usize>().unwrap();
        for p in PRIMES {
            let r = reduced_flattening_rank(n, &YoungDiagram::empty(n), &[p]).unwrap();
            if r.rank != expect || r.rows != expect || r.cols != expect {
                fails.push(format!("n={n} p={p}: {r:?}, expected full rank {expect}"));
            }
        }
    }
    report(
        3,
        "surjectivity n=2..6",
        &fails,
        t0.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_04_kernel_bound() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    let mut cases = 0;
    for n in 3..=5usize {
        for m in 0..n {
            let cap = choose((n - 1 + m) as i64, m as i64 - 1);
            for rows in partitions_of(m) {
                let lam = YoungDiagram::new(rows, n).unwrap();
                let r = reduced_flattening_rank(n, &lam, &PRIMES).unwrap();
                let f = f_lambda(n, &lam);
                // independent sum over display cells
                let mut f_oracle = BigInt::from(0);
                for (row, &len) in lam.rows().iter().enumerate() {
                    for col in 1..=len {
                        f_oracle += g(n, row + 1, col);
                    }
                }
                let k = BigInt::from(r.kernel_dim);
                cases += 1;
                if f != f_oracle || k > f || f > cap {
                    fails.push(format!(
                        "n={n} λ={lam}: kernel {k}, Σg {f} (oracle {f_oracle}), cap {cap}"
                    ));
                }
            }
        }
    }
    println!("  {cases} diagrams checked");
    report(
        4,
        "kernel bound n=3..5",
        &fails,
        t0.elapsed(),
        Some(Duration::from_secs(300)),
    );
}

#[test]
fn criterion_05_diagonal_counts() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    for n in 1..=12usize {
        let table = diagonal_zero_table(n);
        for i in 1..=n {
            for j in 1..=n {
                let formula = g(n, i, j);
                let counted = BigInt::from(table[j - 1][n + j - i - 1]);
                // closed-form oracle: j-1 elements below n-i+j, n-j above it in [2n-1]
                let oracle =
                    choose((n + j - i - 1) as i64, j as i64 - 1) * choose((n + i - j - 1) as i64, (n - j) as i64);
                if counted != formula || oracle != formula {
                    fails.push(format!(
                        "n={n} i={i} j={j}: counted {counted}, g {formula}, oracle {oracle}"
                    ));
                }
            }
        }
    }
    // the single-entry enumerator agrees with the table on a sample
    for (n, i, j) in [(5, 2, 2), (7, 3, 5), (9, 9, 1), (10, 4, 4)] {
        if count_diagonal_zeros(n, i, j) != g(n, i, j) {
            fails.push(format!("count_diagonal_zeros({n},{i},{j}) != g"));
        }
    }
    report(
        5,
        "diagonal-count identity n<=12",
        &fails,
        t0.elapsed(),
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_06_upper_triangular() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    for n in 2..=5 {
        if !verify_upper_triangular(n).unwrap() {
            fails.push(format!("n={n}"));
        }
    }
    report(6, "upper triangularity n=2..5", &fails, t0.elapsed(), None);
}

#[test]
fn criterion_07_row_column_max() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    for n in 2..=8 {
        for m in 1..n {
            if !max_f_is_hook_free(n, m).unwrap() {
                fails.push(format!("max f: n={n} m={m}"));
            }
        }
    }
    for n in 2..=20usize {
        for m in 1..n {
            let s: BigInt = (1..=m).map(|i| g(n, i, 1)).sum();
            let b = choose((n - 1 + m) as i64, m as i64 - 1);
            if s != b {
                fails.push(format!("Σg: n={n} m={m}: {s} != {b}"));
            }
        }
    }
    report(7, "row/column maximization", &fails, t0.elapsed(), None);
}

#[test]
fn criterion_08_inequalities() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    let mut cases = 0;
    for n in 5..=40usize {
        for i in 2..n {
            for j in i..n {
                if i * j >= n {
                    break;
                }
                cases += 1;
                if !check_main_inequality(i, j, n).unwrap() {
                    fails.push(format!("main: i={i} j={j} n={n}"));
                }
                if !check_ratio_inequality(i, j, n).unwrap() {
                    fails.push(format!("ratio: i={i} j={j} n={n}"));
                }
            }
        }
    }
    if cases == 0 {
        fails.push("no cases in range".into());
    }
    report(8, "inequalities ij<n<=40", &fails, t0.elapsed(), None);
}

#[test]
fn criterion_09_compression() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    let p = CompressionProfile::new([5, 5, 5], [2, 1, 5]).unwrap();
    let lhs = 5 * 2 + 5 + 5 * 5;
    let rhs = 2 * 2 + 1 + 5 * 5 + 2 * 5;
    if lhs != rhs || surjdim_holds(&p) {
        fails.push(format!("surjdim boundary: {lhs} vs {rhs}, holds={}", surjdim_holds(&p)));
    }
    if dim_y(&p) != BigInt::from(124) {
        fails.push(format!("dim Y = {}", dim_y(&p)));
    }
    match top_chern_degree(&p) {
        Ok(d) if d == BigInt::from(50) => {}
        other => fails.push(format!("degree {other:?}")),
    }
    let b = top_chern_contributions(&p).unwrap();
    let mut values: Vec<BigInt> = b.contributions.iter().map(|c| c.value.clone()).collect();
    values.sort();
    if values != [10, 10, 30].map(BigInt::from) {
        fails.push(format!("contributions {values:?}"));
    }
    println!(
        "  contributions: {}",
        b.contributions
            .iter()
            .map(|c| c.value.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    );
    if min_aprime_threshold(9).unwrap() != 4 {
        fails.push(format!("threshold(9) = {:?}", min_aprime_threshold(9)));
    }
    report(9, "compression", &fails, t0.elapsed(), Some(Duration::from_secs(30)));
}

/// Fraction-free Gaussian elimination on a dense integer matrix.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != zero) else {
            continue;
        };
        a.swap(rank, pr);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = zero.clone();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

#[test]
fn criterion_10_oracle_equivalence() {
    let t0 = Instant::now();
    let mut fails = Vec::new();
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x6d6d_6c62);
    for case in 0..20 {
        let dims = [
            rng.random_range(1..=5),
            rng.random_range(1..=5),
            rng.random_range(1..=5),
        ];
        let mut seen = BTreeSet::new();
        let mut entries = Vec::new();
        let total = dims[0] * dims[1] * dims[2];
        for _ in 0..rng.random_range(1..=total) {
            let (i, j, k) = (
                rng.random_range(0..dims[0]),
                rng.random_range(0..dims[1]),
                rng.random_range(0..dims[2]),
            );
            if seen.insert((i, j, k)) {
                let v = [-3i64, -2, -1, 1, 2, 3][rng.random_range(0..6)];
                entries.push((i, j, k, v));
            }
        }
        let t = Tensor3::new(dims, entries.clone()).unwrap();
        // B* → A⊗C, built straight from the entry list
        let mut dense = vec![vec![BigInt::from(0); dims[0] * dims[2]]; dims[1]];
        for &(i, j, k, v) in &entries {
            dense[j][i * dims[2] + k] += v;
        }
        let oracle = bareiss_rank(dense);
        let spec = KoszulMatrixSpec {
            tensor: t,
            p: 0,
            projection: Projection::Identity,
        };
        let m = koszul_matrix(&spec).unwrap();
        let rank = rank_certified(&m, &PRIMES).unwrap();
        if rank != oracle {
            fails.push(format!(
                "case {case} dims {dims:?}: koszul rank {rank}, oracle {oracle}"
            ));
        }
    }
    report(10, "koszul p=0 vs dense oracle", &fails, t0.elapsed(), None);
}
