//! Named invariant suites, run exhaustively over a range of `n`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{binomial, binomial_u64, ranks_per_prime};
use crate::koszul::{reduced_flattening, reduced_flattening_rank};
use crate::order::{
    check_main_inequality, check_ratio_inequality, diagonal_zero_table, f_lambda, g, max_f_is_hook_free,
    verify_upper_triangular, verify_upper_triangular_reduced, zero_diagonal_for_slot,
};
use crate::partition::partitions_of;
use crate::tensor::YoungDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    DiagonalCounts,
    Triangularity,
    MaxF,
    IneqMain,
    Surjectivity,
    KernelBound,
    CellConvention,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::DiagonalCounts,
        Suite::Triangularity,
        Suite::MaxF,
        Suite::IneqMain,
        Suite::Surjectivity,
        Suite::KernelBound,
        Suite::CellConvention,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::DiagonalCounts => "diagonal-counts",
            Suite::Triangularity => "triangularity",
            Suite::MaxF => "max-f",
            Suite::IneqMain => "ineq-main",
            Suite::Surjectivity => "surjectivity",
            Suite::KernelBound => "kernel-bound",
            Suite::CellConvention => "cell-convention",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Largest `n` checked when the caller does not choose.
    pub fn default_max_n(&self) -> usize {
        match self {
            Suite::DiagonalCounts => 12,
            Suite::Triangularity => 5,
            Suite::MaxF => 8,
            Suite::IneqMain => 40,
            Suite::Surjectivity => 6,
            Suite::KernelBound => 5,
            Suite::CellConvention => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_n: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, max_n: usize) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            max_n,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(suite: Suite, max_n: usize, primes: &[u64]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(suite, max_n);
    match suite {
        Suite::DiagonalCounts => {
            for n in 1..=max_n {
                let table = diagonal_zero_table(n);
                for i in 1..=n {
                    for j in 1..=n {
                        let counted = BigInt::from(table[j - 1][n + j - i - 1]);
                        let formula = g(n, i, j);
                        rep.check(counted == formula, || {
                            format!("n={n} i={i} j={j}: {counted} != {formula}")
                        });
                    }
                }
            }
        }
        Suite::Triangularity => {
            for n in 2..=max_n {
                rep.check(verify_upper_triangular(n)?, || format!("n={n}"));
                for m in 1..n {
                    for rows in partitions_of(m) {
                        let lam = YoungDiagram::new(rows, n)?;
                        let ok = verify_upper_triangular_reduced(n, &lam)?;
                        rep.check(ok, || format!("n={n} λ={lam}"));
                    }
                }
            }
        }
        Suite::MaxF => {
            for n in 2..=max_n {
                for m in 1..n {
                    rep.check(max_f_is_hook_free(n, m)?, || {
                        format!("n={n} m={m}: max f not at row/column")
                    });
                }
            }
            for n in 2..=max_n.max(20) {
                for m in 1..n {
                    let s: BigInt = (1..=m).map(|i| g(n, i, 1)).sum();
                    let t: BigInt = (1..=m).map(|j| g(n, 1, j)).sum();
                    let b = binomial((n - 1 + m) as u64, m as i64 - 1);
                    rep.check(s == b && t == b, || format!("n={n} m={m}: Σg = {s}, {t}, expected {b}"));
                }
            }
        }
        Suite::IneqMain => {
            for n in 2..=max_n {
                for i in 2..n {
                    for j in i..n {
                        if i * j >= n {
                            break;
                        }
                        rep.check(check_main_inequality(i, j, n)?, || {
                            format!("g(1,ij) < g(i,j) at i={i} j={j} n={n}")
                        });
                        rep.check(check_ratio_inequality(i, j, n)?, || {
                            format!("ratio inequality fails at i={i} j={j} n={n}")
                        });
                    }
                }
            }
        }
        Suite::Surjectivity => {
            if primes.len() < 2 {
                return Err(Error::OutOfRange("surjectivity needs two primes".into()));
            }
            for n in 2..=max_n {
                let m = reduced_flattening(n, &YoungDiagram::empty(n))?;
                let expect =
                    n * binomial_u64((2 * n - 1) as u64, n as u64).ok_or(Error::Overflow("flattening size"))? as usize;
                let ranks = ranks_per_prime(&m, primes)?;
                rep.check(ranks.iter().all(|&r| r == expect), || {
                    format!("n={n}: ranks {ranks:?}, expected {expect}")
                });
            }
        }
        Suite::KernelBound => {
            for n in 3..=max_n {
                for m in 1..n {
                    let cap = binomial((n - 1 + m) as u64, m as i64 - 1);
                    for rows in partitions_of(m) {
                        let lam = YoungDiagram::new(rows, n)?;
                        let r = reduced_flattening_rank(n, &lam, primes)?;
                        let f = f_lambda(n, &lam);
                        let k = BigInt::from(r.kernel_dim);
                        rep.check(k <= f && f <= cap, || {
                            format!("n={n} λ={lam}: kernel {k}, Σg {f}, cap {cap}")
                        });
                    }
                }
            }
        }
        Suite::CellConvention => {
            // slot u^i ⊗ v_j lies in display row n + 1 - i; the diagonal
            // entries it removes are counted by g at (display row, column)
            for n in 2..=max_n {
                for i in 1..=n {
                    for j in 1..=n {
                        let lost = BigInt::from(zero_diagonal_for_slot(n, i, j)?);
                        let expect = g(n, n + 1 - i, j);
                        rep.check(lost == expect, || {
                            format!("n={n} slot=({i},{j}): lost {lost}, g {expect}")
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}
