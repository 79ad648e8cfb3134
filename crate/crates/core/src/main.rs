//! Command-line front end: census, constants, mnc and verify runs with
//! reproducible file outputs and a manifest of artifact checksums.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use mgcensus::census::{
    census_mnc_with, census_sylow, squarefree_sieve, CensusConfig, CensusTable, DEFAULT_SEGMENT,
};
use mgcensus::constants::{artin_xi, b_q, constant_a, k_constant};
use mgcensus::partitions::{c_alpha, e_q_alpha, Partition};
use mgcensus::verify::{convergence_report, default_xs, Target, DEFAULT_BAND, DEFAULT_CUTOFF};

use num_traits::ToPrimitive;

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAIL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mgcensus",
    version,
    about = "Exact censuses of multiplicative-group structure and verification of their asymptotics"
)]
struct Cli {
    /// Bound the rayon worker count; outputs are identical for any value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Sylow-signature census of n <= x and export CSV/JSON tables.
    Census(CensusArgs),
    /// Evaluate the leading constants to controlled precision.
    Constants(ConstantsArgs),
    /// Count n <= x whose multiplicative group is maximally non-cyclic.
    Mnc(MncArgs),
    /// Compare censuses against the asymptotic main terms across decades.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CensusArgs {
    /// Count limit; accepts scientific notation like 1e6.
    #[arg(long, value_parser = parse_count)]
    x: u64,
    /// Odd prime q.
    #[arg(long)]
    q: u64,
    /// Sieve window in integers.
    #[arg(long, value_parser = parse_count)]
    segment_size: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Odd prime q for B_q, C, E_q and K.
    #[arg(long)]
    q: Option<u64>,
    /// Partition in bracket form, e.g. "[1,1]"; defaults to "[]".
    #[arg(long)]
    alpha: Option<String>,
    /// Euler-product truncation point.
    #[arg(long, value_parser = parse_count)]
    cutoff: Option<u64>,
    /// Also evaluate Artin's constant and the Wirsing-Odoni constant A.
    #[arg(long)]
    artin: bool,
    /// Output directory (JSON + manifest); stdout only when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MncArgs {
    #[arg(long, value_parser = parse_count)]
    x: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated targets: d:3:[], d0:3:[1], mnc.
    #[arg(long)]
    targets: String,
    /// Grid of limits: "1e4..1e8" (decades) or "1e4,1e5,1e6".
    #[arg(long)]
    xs: Option<String>,
    /// Acceptance band on |ratio - 1| at the largest x.
    #[arg(long)]
    band: Option<f64>,
    /// Constant-evaluation cutoff.
    #[arg(long, value_parser = parse_count)]
    cutoff: Option<u64>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

/// Accepts plain integers and mantissa-exponent forms like "1e8" or "2.5e6",
/// echoing back an exact integer.
fn parse_count(s: &str) -> Result<u64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let lower = t.to_ascii_lowercase();
    if let Some((mant, exp)) = lower.split_once('e') {
        let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        let (int_part, frac_part) = match mant.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mant, ""),
        };
        if frac_part.len() as u32 > exp {
            return Err(format!("{s:?} is not an integer"));
        }
        let digits = format!("{int_part}{frac_part}");
        let mantissa: u64 = digits.parse().map_err(|_| format!("bad mantissa in {s:?}"))?;
        let scale = 10u64
            .checked_pow(exp - frac_part.len() as u32)
            .ok_or_else(|| format!("{s:?} overflows u64"))?;
        return mantissa
            .checked_mul(scale)
            .ok_or_else(|| format!("{s:?} overflows u64"));
    }
    Err(format!("cannot parse {s:?} as a count"))
}

fn parse_xs(s: &str) -> anyhow::Result<Vec<u64>> {
    let t = s.trim();
    if let Some((lo, hi)) = t.split_once("..") {
        let lo = parse_count(lo).map_err(anyhow::Error::msg)?;
        let hi = parse_count(hi).map_err(anyhow::Error::msg)?;
        if lo < 2 || lo > hi {
            bail!("bad range {s:?}");
        }
        let mut xs = Vec::new();
        let mut x = lo;
        loop {
            xs.push(x);
            if x >= hi {
                break;
            }
            x = x.saturating_mul(10).min(hi);
        }
        return Ok(xs);
    }
    let mut xs = Vec::new();
    for tok in t.split(',') {
        xs.push(parse_count(tok).map_err(anyhow::Error::msg)?);
    }
    Ok(xs)
}

/// 15 significant digits, as a decimal string.
fn sig15(v: f64) -> String {
    format!("{v:.14e}")
}

#[derive(Serialize)]
struct ConstantRecord {
    name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<String>,
    value: String,
    err: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    heuristic_tail: Option<String>,
}

#[derive(Serialize)]
struct ArtifactEntry {
    path: String,
    sha256: String,
    bytes: u64,
}

#[derive(Serialize)]
struct RunManifest {
    command: Vec<String>,
    config: serde_json::Value,
    artifacts: Vec<ArtifactEntry>,
    wall_time_seconds: f64,
}

struct OutputSink {
    dir: PathBuf,
    artifacts: Vec<ArtifactEntry>,
    started: Instant,
}

impl OutputSink {
    fn new(dir: &Path) -> anyhow::Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            artifacts: Vec::new(),
            started: Instant::now(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> anyhow::Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        let mut hasher = Sha256::new();
        hasher.update(contents.as_bytes());
        self.artifacts.push(ArtifactEntry {
            path: name.to_string(),
            sha256: format!("{:x}", hasher.finalize()),
            bytes: contents.len() as u64,
        });
        Ok(())
    }

    fn finish(self, config: serde_json::Value) -> anyhow::Result<()> {
        let manifest = RunManifest {
            command: std::env::args().collect(),
            config,
            artifacts: self.artifacts,
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
        };
        let path = self.dir.join("run_manifest.json");
        fs::write(&path, serde_json::to_string_pretty(&manifest)?)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

fn cmd_census(args: &CensusArgs) -> anyhow::Result<()> {
    let mut cfg = CensusConfig::new(args.x, args.q);
    if let Some(seg) = args.segment_size {
        cfg.segment_size = seg;
    }
    cfg.validate().map_err(usage_error)?;
    let mut sink = OutputSink::new(&args.out)?;
    let table = census_sylow(&cfg)?;
    let stem = format!("census_x{}_q{}", cfg.x, cfg.q);
    sink.write(&format!("{stem}.csv"), &table.to_csv())?;
    sink.write(&format!("{stem}.json"), &table.to_json_string())?;
    println!(
        "census: x={} q={} cells={} total={}",
        cfg.x,
        cfg.q,
        table.rows().count(),
        table.total()
    );
    sink.finish(serde_json::to_value(&cfg)?)?;
    Ok(())
}

fn constant_records(args: &ConstantsArgs) -> anyhow::Result<Vec<ConstantRecord>> {
    let cutoff = args.cutoff.unwrap_or(DEFAULT_CUTOFF);
    let mut records = Vec::new();
    if let Some(q) = args.q {
        let alpha: Partition = args
            .alpha
            .as_deref()
            .unwrap_or("[]")
            .parse()
            .map_err(usage_error)?;
        let b = b_q(q, cutoff).map_err(usage_error)?;
        let c = c_alpha(&alpha).to_f64().context("C(alpha) fits f64")?;
        let e = e_q_alpha(q, &alpha)?.to_f64().context("E fits f64")?;
        let k = k_constant(q, &alpha, cutoff)?;
        let alpha_s = alpha.to_string();
        records.push(ConstantRecord {
            name: "B_q",
            q: Some(q),
            alpha: None,
            value: sig15(b.value),
            err: sig15(b.err),
            cutoff: Some(cutoff),
            heuristic_tail: None,
        });
        records.push(ConstantRecord {
            name: "C_alpha",
            q: Some(q),
            alpha: Some(alpha_s.clone()),
            value: sig15(c),
            err: sig15(0.0),
            cutoff: None,
            heuristic_tail: None,
        });
        records.push(ConstantRecord {
            name: "E_q_alpha",
            q: Some(q),
            alpha: Some(alpha_s.clone()),
            value: sig15(e),
            err: sig15(0.0),
            cutoff: None,
            heuristic_tail: None,
        });
        records.push(ConstantRecord {
            name: "K",
            q: Some(q),
            alpha: Some(alpha_s),
            value: sig15(k.value),
            err: sig15(k.err),
            cutoff: Some(cutoff),
            heuristic_tail: None,
        });
    }
    if args.artin {
        let xi = artin_xi(cutoff)?;
        let sqfree = squarefree_sieve(cutoff);
        let a = constant_a(cutoff, &sqfree)?;
        records.push(ConstantRecord {
            name: "artin_xi",
            q: None,
            alpha: None,
            value: sig15(xi.value),
            err: sig15(xi.err),
            cutoff: Some(cutoff),
            heuristic_tail: None,
        });
        records.push(ConstantRecord {
            name: "A",
            q: None,
            alpha: None,
            value: sig15(a.value),
            err: sig15(a.err),
            cutoff: Some(cutoff),
            heuristic_tail: Some(sig15(a.heuristic_tail)),
        });
    }
    if records.is_empty() {
        bail!("nothing to do: pass --q (with optional --alpha) and/or --artin");
    }
    Ok(records)
}

fn cmd_constants(args: &ConstantsArgs) -> anyhow::Result<()> {
    let records = constant_records(args)?;
    let json = serde_json::to_string_pretty(&records)?;
    println!("{json}");
    if let Some(dir) = &args.out {
        let mut sink = OutputSink::new(dir)?;
        sink.write("constants.json", &json)?;
        sink.finish(serde_json::json!({
            "q": args.q,
            "alpha": args.alpha,
            "cutoff": args.cutoff.unwrap_or(DEFAULT_CUTOFF),
            "artin": args.artin,
        }))?;
    }
    Ok(())
}

fn cmd_mnc(args: &MncArgs) -> anyhow::Result<()> {
    let sqfree = squarefree_sieve(args.x.max(2));
    let count = census_mnc_with(args.x, DEFAULT_SEGMENT, &sqfree).map_err(usage_error)?;
    println!("{count}");
    if let Some(dir) = &args.out {
        let mut sink = OutputSink::new(dir)?;
        let json = serde_json::to_string_pretty(&serde_json::json!({
            "x": args.x,
            "count": count,
        }))?;
        sink.write(&format!("mnc_x{}.json", args.x), &json)?;
        sink.finish(serde_json::json!({ "x": args.x }))?;
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let mut targets = Vec::new();
    for tok in args.targets.split(',') {
        targets.push(tok.parse::<Target>().map_err(usage_error)?);
    }
    let xs = match &args.xs {
        Some(s) => parse_xs(s)?,
        None => default_xs(),
    };
    let band = args.band.unwrap_or(DEFAULT_BAND);
    let cutoff = args.cutoff.unwrap_or(DEFAULT_CUTOFF);

    // One census per (q, x) and one squarefree table across all mnc limits.
    let mut census_cache: HashMap<(u64, u64), CensusTable> = HashMap::new();
    let mut mnc_cache: HashMap<u64, u64> = HashMap::new();
    let max_x = *xs.last().expect("xs nonempty");
    let mnc_table = targets
        .iter()
        .any(|t| matches!(t, Target::Mnc))
        .then(|| squarefree_sieve(max_x.max(2)));

    let report = convergence_report(&targets, &xs, band, cutoff, |target, x| match target {
        Target::D { q, alpha } => {
            let table = match census_cache.entry((*q, x)) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(census_sylow(&CensusConfig::new(x, *q))?)
                }
            };
            Ok(table.count_d(alpha))
        }
        Target::D0 { q, alpha } => {
            let table = match census_cache.entry((*q, x)) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(census_sylow(&CensusConfig::new(x, *q))?)
                }
            };
            Ok(table.count_dk(0, alpha))
        }
        Target::Mnc => {
            if let Some(c) = mnc_cache.get(&x) {
                return Ok(*c);
            }
            let table = mnc_table.as_ref().expect("mnc table prepared");
            let c = census_mnc_with(x, DEFAULT_SEGMENT, table)?;
            mnc_cache.insert(x, c);
            Ok(c)
        }
    })?;

    let mut sink = OutputSink::new(&args.out)?;
    sink.write("verify_rows.csv", &report.rows_csv())?;
    sink.write("verify_summary.json", &report.summary_json())?;
    for v in &report.verdicts {
        println!(
            "{}: {} (final |ratio-1| = {:.4}, band {}, trend {})",
            v.target,
            if v.pass { "PASS" } else { "FAIL" },
            v.final_deviation,
            v.band,
            if v.trend_nonincreasing { "ok" } else { "growing" },
        );
    }
    sink.finish(serde_json::json!({
        "targets": args.targets,
        "xs": xs,
        "band": band,
        "cutoff": cutoff,
    }))?;
    Ok(report.all_pass())
}

/// Wraps domain/config failures so main can exit with the usage code.
fn usage_error(e: mgcensus::Error) -> anyhow::Error {
    anyhow::Error::new(e).context(UsageMarker)
}

#[derive(Debug)]
struct UsageMarker;

impl std::fmt::Display for UsageMarker {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid arguments")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("mgcensus: cannot configure {threads} threads: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let outcome = match &cli.command {
        Command::Census(args) => cmd_census(args).map(|()| true),
        Command::Constants(args) => cmd_constants(args).map(|()| true),
        Command::Mnc(args) => cmd_mnc(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY_FAIL),
        Err(e) => {
            eprintln!("mgcensus: error: {e:#}");
            if e.downcast_ref::<UsageMarker>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
