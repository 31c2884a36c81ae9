//! `crossings`: exact moments, bounds and simulation for random convex embeddings.
//!
//! Exit codes: 0 success, 1 usage, 2 parse error, 3 capacity exceeded,
//! 4 a `verify` check failed.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use crossing_core::bounds::BoundInputs;
use crossing_core::rational::to_f64;
use crossing_core::{
    empirical_distribution, exact_distribution, exact_moments, ks_distance_to_normal, make_family,
    parse_edge_list, verify, Error, FamilyKind, Graph, GraphFamily, Limits,
};
use sha2::{Digest, Sha256};

use report::*;

#[derive(Debug, Parser)]
#[command(
    name = "crossings",
    version,
    about = "Crossings of graphs embedded at random in convex position"
)]
struct Cli {
    /// Upper bound on ordered 2-matching pairs classified by the census
    /// (default 1e9, or $CROSSINGS_PAIR_CAP).
    #[arg(long, global = true)]
    pair_cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact moments, pair census and Kolmogorov bound of an edge-list graph.
    Analyze {
        /// Edge-list file, or `-` for standard input.
        #[arg(default_value = "-")]
        path: String,
        /// Emit a flat key,value table instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Empirical crossing distribution over seeded uniform embeddings.
    Simulate {
        #[arg(default_value = "-")]
        path: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also enumerate the exact distribution (small graphs only).
        #[arg(long)]
        exact: bool,
    },
    /// Exact crossing distribution by enumerating every embedding.
    Exact {
        #[arg(default_value = "-")]
        path: String,
    },
    /// Kolmogorov-distance bound for the standardized crossing count.
    Bound {
        #[arg(default_value = "-")]
        path: String,
    },
    /// Write a named family graph in edge-list format.
    Family {
        #[arg(long, value_parser = parse_kind)]
        kind: FamilyKind,
        #[arg(long)]
        n: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every enumeration oracle and report a pass/fail table.
    Verify,
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Core(Error),
    VerifyFailed(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut limits = Limits::from_env();
    if let Some(cap) = cli.pair_cap {
        limits = limits.with_pair_cap(cap);
    }
    match run(cli.command, &limits) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Usage(m) => (1, m),
                Failure::Core(e @ Error::Parse { .. }) => (2, e.to_string()),
                Failure::Core(e @ Error::Capacity { .. }) => (3, e.to_string()),
                Failure::Core(e) => (1, e.to_string()),
                Failure::VerifyFailed(n) => (4, format!("{n} verification check(s) failed")),
            };
            eprintln!("crossings: {message}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command, limits: &Limits) -> CmdResult {
    match command {
        Command::Analyze { path, csv } => analyze(&path, csv, limits),
        Command::Simulate {
            path,
            samples,
            seed,
            exact,
        } => simulate(&path, samples, seed, exact, limits),
        Command::Exact { path } => {
            let (g, digest) = load(&path)?;
            Ok(to_json(&exact_document(&g, digest, limits)?)?)
        }
        Command::Bound { path } => bound(&path, limits),
        Command::Family { kind, n, out } => {
            let text = make_family(GraphFamily::new(kind, n)?)?.to_edge_list();
            match out {
                Some(file) => {
                    fs::write(file, text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Verify => verify_all(limits),
    }
}

fn load(path: &str) -> Result<(Graph, String), Failure> {
    let mut bytes = Vec::new();
    if path == "-" {
        io::stdin().read_to_end(&mut bytes)?;
    } else {
        bytes = fs::read(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    }
    let text = String::from_utf8(bytes.clone()).map_err(|_| {
        Failure::Core(Error::Parse {
            line: 0,
            message: "input is not UTF-8".into(),
        })
    })?;
    let digest = format!("sha256:{}", hex::encode(Sha256::digest(&bytes)));
    Ok((parse_edge_list(&text)?, digest))
}

fn to_json<T: serde::Serialize>(doc: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

fn analyze(path: &str, csv: bool, limits: &Limits) -> CmdResult {
    let (g, digest) = load(path)?;
    let report = exact_moments(&g, limits)?;
    let doc = AnalysisDocument::new(&g, &report, digest);
    if csv {
        Ok(doc.to_csv())
    } else {
        to_json(&doc)
    }
}

fn exact_document(g: &Graph, digest: String, limits: &Limits) -> Result<ExactDocument, Failure> {
    let pmf = exact_distribution(g, limits)?;
    let mean = pmf.exact_mean().expect("exact pmf");
    let variance = pmf.exact_variance().expect("exact pmf");
    let sigma = to_f64(&variance).sqrt();
    Ok(ExactDocument {
        schema: EXACT_SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        input_digest: digest,
        graph: GraphSummary::new(g),
        pmf: pmf_entries(&pmf),
        mean: (&mean).into(),
        variance: (&variance).into(),
        ks_to_normal: ks_distance_to_normal(&pmf, to_f64(&mean), sigma).ok(),
    })
}

fn simulate(path: &str, samples: u64, seed: u64, exact: bool, limits: &Limits) -> CmdResult {
    let (g, digest) = load(path)?;
    if samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let pmf = empirical_distribution(&g, samples, seed, limits)?;
    let (standardization, mean, sigma) = match exact_moments(&g, limits) {
        Ok(report) => (
            "exact",
            to_f64(&report.mean),
            to_f64(&report.variance).sqrt(),
        ),
        Err(Error::Capacity { .. }) => ("empirical", pmf.mean(), pmf.variance().sqrt()),
        Err(e) => return Err(e.into()),
    };
    let exact = if exact {
        Some(exact_document(&g, digest.clone(), limits)?)
    } else {
        None
    };
    to_json(&SimulationDocument {
        schema: SIMULATION_SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        input_digest: digest,
        graph: GraphSummary::new(&g),
        samples,
        seed,
        pmf: pmf_entries(&pmf),
        empirical_mean: pmf.mean(),
        empirical_variance: pmf.variance(),
        standardization,
        standardization_mean: mean,
        standardization_sigma: sigma,
        ks_to_normal: ks_distance_to_normal(&pmf, mean, sigma).ok(),
        exact,
    })
}

fn bound(path: &str, limits: &Limits) -> CmdResult {
    let (g, digest) = load(path)?;
    let report = exact_moments(&g, limits)?;
    let inputs = BoundInputs::from(&report);
    to_json(&BoundDocument {
        schema: BOUND_SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        input_digest: digest,
        graph: GraphSummary::new(&g),
        m2: inputs.m2.to_string(),
        m4: inputs.m4.to_string(),
        variance: (&inputs.variance).into(),
        bound: BoundSection::new(&report),
    })
}

fn verify_all(limits: &Limits) -> CmdResult {
    let checks = verify::run_all(limits)?;
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status}  {:width$}  {}\n", c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    if failed > 0 {
        print!("{out}");
        return Err(Failure::VerifyFailed(failed));
    }
    Ok(out)
}
