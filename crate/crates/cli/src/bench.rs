//! Deterministic benchmark suites written as CSV.

use std::time::Instant;

use clap::{Args, ValueEnum};
use cograph::cotree::build_cotree;
use cograph::extract::p4thm_extract;
use cograph::generators::{gnp, path};
use cograph::partition::rodl_partition;
use cograph::rational::{ceil_usize, floor_usize, format_rational, int, ratio};
use cograph::viral::{count_copies, Pattern};
use cograph::{random_cograph, Rational};
use serde_json::json;

use crate::{check, usage, Ctx, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Extract,
    Partition,
    Count,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    sizes: Vec<usize>,
    /// Seeds as `a..b` (inclusive) or a comma-separated list.
    #[arg(long, default_value = "1..5")]
    seeds: String,
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, Failure> {
    let bad = || usage(format!("invalid --seeds {s:?}; expected a..b or a,b,c"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

struct Row {
    n: usize,
    seed: u64,
    wall_ms: f64,
    quantity: String,
    bound: String,
    slack: String,
    pass: bool,
}

pub fn bench(ctx: &mut Ctx, a: &BenchArgs) -> Result<(), Failure> {
    let seeds = parse_seeds(&a.seeds)?;
    let eps = ctx.global.eps.clone().unwrap_or_else(|| match a.suite {
        Suite::Partition => ratio(3, 10),
        _ => ratio(1, 4),
    });
    let suite = match a.suite {
        Suite::Extract => "extract",
        Suite::Partition => "partition",
        Suite::Count => "count",
    };
    let mut rows = Vec::new();
    for &n in &a.sizes {
        for &seed in &seeds {
            rows.push(match a.suite {
                Suite::Extract => extract_row(n, seed, &eps)?,
                Suite::Partition => partition_row(n, seed, &eps)?,
                Suite::Count => count_row(n, seed)?,
            });
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Run(e.to_string());
    w.write_record(["suite", "n", "seed", "eps", "wall_ms", "quantity", "bound", "slack", "pass"])
        .map_err(csv_err)?;
    let eps_text = format_rational(&eps);
    for r in &rows {
        w.write_record([
            suite,
            &r.n.to_string(),
            &r.seed.to_string(),
            &eps_text,
            &format!("{:.3}", r.wall_ms),
            &r.quantity,
            &r.bound,
            &r.slack,
            if r.pass { "PASS" } else { "FAIL" },
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Run(e.to_string()))?;
    let text = String::from_utf8(bytes).expect("csv of ascii fields");
    ctx.report.text.extend(text.lines().map(str::to_owned));
    // wall times stay out of the structured record
    ctx.report.output(
        "rows",
        rows.iter()
            .map(|r| json!({"n": r.n, "seed": r.seed, "quantity": r.quantity, "bound": r.bound, "slack": r.slack, "pass": r.pass}))
            .collect::<Vec<_>>(),
    );
    let failed = rows.iter().filter(|r| !r.pass).count();
    ctx.report.check(
        "rows",
        if failed == 0 { Ok(format!("{} rows", rows.len())) } else { Err(format!("{failed} of {} rows failed", rows.len())) },
    );
    Ok(())
}

fn extract_row(n: usize, seed: u64, eps: &Rational) -> Result<Row, Failure> {
    let (g, t) = random_cograph(n, &ratio(1, 2), seed)?;
    let start = Instant::now();
    let c = p4thm_extract(&t, &g, eps)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let need = ceil_usize(&(eps * int(n)));
    let deg_ok = int(check::max_degree(&g, &c.set, c.side)) <= eps * eps * int(n);
    Ok(Row {
        n,
        seed,
        wall_ms,
        quantity: c.set.len().to_string(),
        bound: need.to_string(),
        slack: (c.set.len() as i64 - need as i64).to_string(),
        pass: deg_ok && c.set.len() >= need,
    })
}

fn partition_row(n: usize, seed: u64, eps: &Rational) -> Result<Row, Failure> {
    let (g, t) = random_cograph(n, &ratio(1, 2), seed)?;
    let start = Instant::now();
    let certs = rodl_partition(&t, &g, eps)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let cap = floor_usize(&(int(480) / num_traits::pow(eps.clone(), 4)));
    let sets: Vec<_> = certs.iter().map(|c| &c.set).collect();
    let ok = check::partition(n, &sets).is_ok() && certs.iter().all(|c| check::certificate(&g, c).is_ok());
    Ok(Row {
        n,
        seed,
        wall_ms,
        quantity: certs.len().to_string(),
        bound: cap.to_string(),
        slack: (cap as i64 - certs.len() as i64).to_string(),
        pass: ok && certs.len() <= cap,
    })
}

fn count_row(n: usize, seed: u64) -> Result<Row, Failure> {
    let g = gnp(n, &ratio(1, 2), seed)?;
    let p4 = Pattern::new(path(4))?;
    let start = Instant::now();
    let c = count_copies(&p4, &g);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let cograph = build_cotree(&g)?.is_cograph();
    Ok(Row {
        n,
        seed,
        wall_ms,
        quantity: c.to_string(),
        bound: String::new(),
        slack: String::new(),
        pass: (c == 0u32.into()) == cograph,
    })
}
