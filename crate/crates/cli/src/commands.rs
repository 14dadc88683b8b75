use std::error::Error as StdError;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use clap::builder::PossibleValuesParser;
use mmlb_core::bounds::{best_bound, table_row, theorem_bound, BoundResult};
use mmlb_core::compression::{min_aprime_threshold, summarize, top_chern_contributions, CompressionProfile};
use mmlb_core::exact_linalg::{ranks_per_prime, PrimeField};
use mmlb_core::koszul::{koszul_bound, koszul_matrix, phi_projection};
use mmlb_core::tensor::{substitution_combine, young_reduce};
use mmlb_core::{
    matmul_tensor, run_suite, Error, KoszulMatrixSpec, MatMulSpec, Projection, Suite, Tensor3, YoungDiagram,
};
use serde_json::json;

use crate::output::{emit, Rendered};
use crate::Format;

pub type CmdResult = Result<Outcome, Box<dyn StdError>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub format: Format,
    pub verbose: bool,
}

impl RunConfig {
    /// Every prime must be an odd prime below `2^32`.
    pub fn new(primes: Vec<u64>, format: Format, verbose: bool) -> Result<Self, Error> {
        if primes.is_empty() {
            return Err(Error::NoPrimes);
        }
        for &p in &primes {
            PrimeField::new(p)?;
        }
        Ok(RunConfig {
            primes,
            format,
            verbose,
        })
    }

    fn log(&self, msg: impl FnOnce() -> String) {
        if self.verbose {
            eprintln!("{}", msg());
        }
    }
}

pub fn suite_names() -> PossibleValuesParser {
    PossibleValuesParser::new(Suite::ALL.map(|s| s.name()))
}

fn bound_json(b: &BoundResult) -> serde_json::Value {
    serde_json::to_value(b).expect("bound results serialize")
}

pub fn table(cfg: &RunConfig, ns: &[u64]) -> CmdResult {
    let t0 = Instant::now();
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        rows.push(table_row(n)?);
    }
    cfg.log(|| format!("{} rows in {:.2?}", rows.len(), t0.elapsed()));

    let mut text = String::new();
    if !rows.is_empty() {
        writeln!(
            text,
            "{:>6} {:>6} {:>12} {:>11} {:>10} {:>9}",
            "n", "m*", "bound", "improvement", "reference", "mismatch"
        )?;
    }
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for r in &rows {
        let reference = r.reference_bound.map_or(String::new(), |b| b.to_string());
        writeln!(
            text,
            "{:>6} {:>6} {:>12} {:>11} {:>10} {:>9}",
            r.best.n,
            r.best.m,
            r.best.bound,
            r.best.improvement,
            reference,
            if r.mismatch { "yes" } else { "" }
        )?;
        csv_rows.push(vec![
            r.best.n.to_string(),
            r.best.m.to_string(),
            r.best.bound.to_string(),
            r.best.improvement.to_string(),
            r.log_choice.as_ref().map_or(String::new(), |b| b.m.to_string()),
            r.log_choice.as_ref().map_or(String::new(), |b| b.bound.to_string()),
            reference,
            r.reference_improvement.map_or(String::new(), |b| b.to_string()),
            r.mismatch.to_string(),
        ]);
        json_rows.push(json!({
            "best": bound_json(&r.best),
            "log_choice": r.log_choice.as_ref().map(bound_json),
            "reference_bound": r.reference_bound,
            "reference_improvement": r.reference_improvement,
            "mismatch": r.mismatch,
        }));
    }
    emit(
        cfg.format,
        Rendered {
            command: "table",
            payload: json!({ "rows": json_rows }),
            header: vec![
                "n",
                "m",
                "bound",
                "improvement",
                "log_m",
                "log_bound",
                "reference_bound",
                "reference_improvement",
                "mismatch",
            ],
            rows: csv_rows,
            text,
        },
    )?;
    Ok(Outcome::Success)
}

pub fn bound(cfg: &RunConfig, n: u64, w: Option<u64>, m: Option<u64>) -> CmdResult {
    let w = w.unwrap_or(n);
    let b = match m {
        Some(m) => theorem_bound(n, w, m)?,
        None => best_bound(n, w)?,
    };
    let text = format!(
        "R(M<{n},{n},{w}>) >= {} (m = {}, correction {})\n",
        b.bound, b.m, b.correction
    );
    emit(
        cfg.format,
        Rendered {
            command: "bound",
            payload: json!({ "result": bound_json(&b) }),
            header: vec!["n", "w", "m", "bound", "correction", "improvement"],
            rows: vec![vec![
                b.n.to_string(),
                b.w.to_string(),
                b.m.to_string(),
                b.bound.to_string(),
                b.correction.to_string(),
                b.improvement.to_string(),
            ]],
            text,
        },
    )?;
    Ok(Outcome::Success)
}

pub fn flatten_rank(
    cfg: &RunConfig,
    n: usize,
    lambda: &str,
    p: Option<usize>,
    w: Option<u64>,
    dump: Option<&Path>,
) -> CmdResult {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()).into());
    }
    let lam = YoungDiagram::parse(lambda, n)?;
    let p = p.unwrap_or(n - 1);
    let w = w.unwrap_or(n as u64);
    let spec = MatMulSpec::square(n, 1)?;
    let reduced = young_reduce(&matmul_tensor(&spec), &spec, &lam)?;
    let kspec = KoszulMatrixSpec {
        tensor: reduced,
        p,
        projection: phi_projection(n)?,
    };
    let a_tilde = kspec.a_tilde();

    let t0 = Instant::now();
    let m = koszul_matrix(&kspec)?;
    cfg.log(|| {
        format!(
            "built {}x{} matrix, {} nonzeros, {:.2?}",
            m.rows(),
            m.cols(),
            m.nnz(),
            t0.elapsed()
        )
    });
    if let Some(path) = dump {
        std::fs::write(path, m.to_coordinate_text())?;
    }
    let t1 = Instant::now();
    let ranks = ranks_per_prime(&m, &cfg.primes)?;
    cfg.log(|| format!("ranks {ranks:?} in {:.2?}", t1.elapsed()));
    let rank = *ranks.iter().max().expect("at least one prime");
    let kernel_dim = m.cols() - rank;
    let kb = koszul_bound(rank as u64, a_tilde as u64, p as u64, w)?;
    let nn = (n * n) as u64;
    let implied = substitution_combine(kb, nn, nn - lam.boxes() as u64)?;

    let text = format!(
        "n = {n}, λ = {lam}, p = {p}\nmatrix {} x {}, rank {rank}, kernel {kernel_dim}\nranks per prime {:?}\nbound for M<{n},{n},{w}>: {implied} (flattening {kb} + removed {})\n",
        m.rows(),
        m.cols(),
        cfg.primes.iter().zip(&ranks).collect::<Vec<_>>(),
        lam.boxes()
    );
    emit(
        cfg.format,
        Rendered {
            command: "flatten-rank",
            payload: json!({
                "n": n,
                "lambda": lam.rows(),
                "p": p,
                "w": w,
                "rows": m.rows(),
                "cols": m.cols(),
                "nnz": m.nnz(),
                "primes": cfg.primes,
                "ranks": ranks,
                "rank": rank,
                "kernel_dim": kernel_dim,
                "koszul_bound": kb,
                "bound": implied,
            }),
            header: vec![
                "n",
                "lambda",
                "p",
                "w",
                "rows",
                "cols",
                "rank",
                "kernel_dim",
                "koszul_bound",
                "bound",
            ],
            rows: vec![vec![
                n.to_string(),
                lam.to_string(),
                p.to_string(),
                w.to_string(),
                m.rows().to_string(),
                m.cols().to_string(),
                rank.to_string(),
                kernel_dim.to_string(),
                kb.to_string(),
                implied.to_string(),
            ]],
            text,
        },
    )?;
    Ok(Outcome::Success)
}

pub fn koszul(cfg: &RunConfig, path: &Path, p: usize) -> CmdResult {
    let tensor = Tensor3::from_json(&std::fs::read_to_string(path)?)?;
    let dims = tensor.dims();
    let concise = tensor.concise_dims(&cfg.primes)?;
    let m = koszul_matrix(&KoszulMatrixSpec {
        tensor,
        p,
        projection: Projection::Identity,
    })?;
    let ranks = ranks_per_prime(&m, &cfg.primes)?;
    let rank = *ranks.iter().max().expect("at least one prime");
    let kb = koszul_bound(rank as u64, dims[0] as u64, p as u64, 1)?;
    let text = format!(
        "dims {dims:?}, concise {concise:?}\np = {p}: matrix {} x {}, rank {rank}, border rank >= {kb}\n",
        m.rows(),
        m.cols()
    );
    emit(
        cfg.format,
        Rendered {
            command: "koszul",
            payload: json!({
                "dims": dims,
                "concise_dims": [concise.0, concise.1, concise.2],
                "p": p,
                "rows": m.rows(),
                "cols": m.cols(),
                "ranks": ranks,
                "rank": rank,
                "bound": kb,
            }),
            header: vec!["a", "b", "c", "p", "rows", "cols", "rank", "bound"],
            rows: vec![vec![
                dims[0].to_string(),
                dims[1].to_string(),
                dims[2].to_string(),
                p.to_string(),
                m.rows().to_string(),
                m.cols().to_string(),
                rank.to_string(),
                kb.to_string(),
            ]],
            text,
        },
    )?;
    Ok(Outcome::Success)
}

pub fn verify(cfg: &RunConfig, name: &str, max_n: Option<usize>) -> CmdResult {
    let suite = Suite::parse(name).ok_or_else(|| Error::OutOfRange(format!("unknown suite {name:?}")))?;
    let max_n = max_n.unwrap_or(suite.default_max_n());
    let t0 = Instant::now();
    let rep = run_suite(suite, max_n, &cfg.primes)?;
    cfg.log(|| format!("{} checks in {:.2?}", rep.checks, t0.elapsed()));
    let status = if rep.passed() { "pass" } else { "FAIL" };
    let mut text = format!("{}: {status} ({} checks, n <= {max_n})\n", rep.suite, rep.checks);
    for f in &rep.failures {
        writeln!(text, "  {f}")?;
    }
    let passed = rep.passed();
    emit(
        cfg.format,
        Rendered {
            command: "verify",
            payload: json!({ "report": rep, "passed": passed }),
            header: vec!["suite", "max_n", "checks", "failures", "passed"],
            rows: vec![vec![
                rep.suite.clone(),
                max_n.to_string(),
                rep.checks.to_string(),
                rep.failures.len().to_string(),
                passed.to_string(),
            ]],
            text,
        },
    )?;
    Ok(if passed {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

fn triple(v: &[u64], what: &str) -> Result<[u64; 3], Error> {
    v.try_into()
        .map_err(|_| Error::OutOfRange(format!("{what} needs three comma-separated values")))
}

pub fn compression(cfg: &RunConfig, dims: &[u64], sub: &[u64]) -> CmdResult {
    let profile = CompressionProfile::new(triple(dims, "--dims")?, triple(sub, "--sub")?)?;
    let t0 = Instant::now();
    let summary = summarize(&profile)?;
    let breakdown = match summary.top_chern_degree {
        Some(_) => Some(top_chern_contributions(&profile)?),
        None => None,
    };
    cfg.log(|| format!("Schubert calculus in {:.2?}", t0.elapsed()));
    let cubic = dims.iter().all(|&d| d == dims[0]);
    let threshold = if cubic {
        Some(min_aprime_threshold(dims[0])?)
    } else {
        None
    };

    let degree = summary.top_chern_degree.as_ref().map(|d| d.to_string());
    let contributions: Vec<String> = breakdown
        .as_ref()
        .map(|b| b.contributions.iter().map(|c| c.value.to_string()).collect())
        .unwrap_or_default();
    let mut text = format!(
        "dims {:?}, sub {:?}\nsurjdim {}\ndim Y = {}, ambient = {}\nrank E* = {}, dim G = {}\n",
        profile.dims,
        profile.sub,
        summary.surjdim,
        summary.dim_y,
        summary.ambient_dim,
        summary.bundle_rank,
        summary.grassmannian_dim
    );
    match &degree {
        Some(d) if contributions.is_empty() => writeln!(text, "top Chern degree {d}")?,
        Some(d) => writeln!(text, "top Chern degree {d} = {}", contributions.join(" + "))?,
        None => writeln!(text, "rank E* exceeds dim G: top Chern class vanishes")?,
    }
    if let Some(t) = threshold {
        writeln!(text, "a' threshold for a = {}: {t}", dims[0])?;
    }
    emit(
        cfg.format,
        Rendered {
            command: "compression",
            payload: json!({
                "summary": summary,
                "contributions": breakdown.as_ref().map(|b| &b.contributions),
                "threshold": threshold,
            }),
            header: vec![
                "a",
                "b",
                "c",
                "a'",
                "b'",
                "c'",
                "surjdim",
                "dim_y",
                "ambient_dim",
                "top_chern_degree",
            ],
            rows: vec![vec![
                dims[0].to_string(),
                dims[1].to_string(),
                dims[2].to_string(),
                sub[0].to_string(),
                sub[1].to_string(),
                sub[2].to_string(),
                summary.surjdim.to_string(),
                summary.dim_y.to_string(),
                summary.ambient_dim.to_string(),
                degree.clone().unwrap_or_default(),
            ]],
            text,
        },
    )?;
    Ok(Outcome::Success)
}
