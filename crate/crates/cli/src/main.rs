use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rmsnake::bounds::{bounds_table, format_table};
use rmsnake::code::verify_snake;
use rmsnake::ksnake::{build_ksnake, rank_k, successor_k, unrank_k};
use rmsnake::linf::{LinfSnake, Variant};
use rmsnake::rmgc::build_rmgc;
use rmsnake::search::{emit_octal_code, longest_snake, SearchSpec};
use rmsnake::{CodeRecord, Metric, Permutation};

mod repro;

/// Largest code `verify` checks pairwise without `--force`.
const VERIFY_DEFAULT_LIMIT: usize = 2000;
/// Node budget applied to full-alphabet searches with `n ≥ 6` unless
/// `--exhaustive` or `--budget` is given.
const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Parser)]
#[command(
    name = "rmsnake",
    version,
    about = "Snake-in-the-box codes over permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ksnake,
    Linf,
    Rmgc,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Kendall,
    Linf,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Kendall => Metric::Kendall,
            MetricArg::Linf => Metric::Linf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    OddTop,
    EvenTop,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::OddTop => Variant::OddTop,
            VariantArg::EvenTop => Variant::EvenTop,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a code as a JSON record.
    Gen {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "odd-top")]
        variant: VariantArg,
    },
    /// Print the transition index leading to the next codeword.
    Next {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "odd-top")]
        variant: VariantArg,
    },
    /// Print the rank of a codeword.
    Rank {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "odd-top")]
        variant: VariantArg,
    },
    /// Print the codeword of a given rank.
    Unrank {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: u64,
        #[arg(long, value_enum, default_value = "odd-top")]
        variant: VariantArg,
    },
    /// Check the snake property of a JSON code read from a file or stdin.
    Verify {
        /// Defaults to the record's own metric.
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Allow codes larger than 2000 codewords.
        #[arg(long)]
        force: bool,
    },
    /// Search for the longest snake from the identity.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// Search non-cyclic codes.
        #[arg(long)]
        acyclic: bool,
        /// Comma-separated transition indices, e.g. 5,6.
        #[arg(long, value_delimiter = ',')]
        transitions: Option<Vec<usize>>,
        #[arg(long)]
        budget: Option<u64>,
        /// Search without a node budget even where one applies by default.
        #[arg(long, conflicts_with = "budget")]
        exhaustive: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print upper bounds and construction sizes for a range of n.
    Bounds {
        /// Inclusive range such as 3..12 or 3-12, or a single n.
        #[arg(long, default_value = "2..12")]
        n_range: String,
    },
    /// Rebuild a reference artifact and compare it with the embedded copy.
    Repro { artifact: repro::Artifact },
}

/// An error that maps to exit code 1 rather than 2.
#[derive(Debug)]
pub(crate) struct Failed(pub String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

fn parse_perm(s: &str, n: usize) -> anyhow::Result<Permutation> {
    let p: Permutation = s
        .parse()
        .with_context(|| format!("invalid permutation {s:?}"))?;
    if p.len() != n {
        bail!("permutation {p} has length {}, expected {n}", p.len());
    }
    Ok(p)
}

fn parse_range(s: &str) -> anyhow::Result<std::ops::RangeInclusive<usize>> {
    let parts: Vec<&str> = if s.contains("..") {
        s.splitn(2, "..").collect()
    } else {
        s.splitn(2, '-').collect()
    };
    let num = |t: &str| t.trim().trim_start_matches('=').parse::<usize>();
    let (lo, hi) = match parts.as_slice() {
        [one] => (num(one)?, num(one)?),
        [a, b] => (num(a)?, num(b)?),
        _ => unreachable!(),
    };
    if lo > hi {
        bail!("empty range {s:?}");
    }
    Ok(lo..=hi)
}

fn emit(value: serde_json::Value) {
    println!("{value}");
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Gen { family, n, variant } => {
            let (code, metric) = match family {
                Family::Ksnake => (build_ksnake(n)?, Some(Metric::Kendall)),
                Family::Linf => (
                    LinfSnake::new(n, variant.into())?.build()?,
                    Some(Metric::Linf),
                ),
                Family::Rmgc => (build_rmgc(n)?.code().clone(), None),
            };
            eprintln!("{} codewords", code.len());
            println!("{}", CodeRecord::from_code(&code, metric).to_json());
        }
        Command::Next {
            family,
            n,
            perm,
            variant,
        } => {
            let p = parse_perm(&perm, n)?;
            let t = match family {
                Family::Ksnake => successor_k(&p),
                Family::Linf => LinfSnake::new(n, variant.into())?.successor(&p),
                Family::Rmgc => build_rmgc(n)?.succ(&p),
            }
            .map_err(not_member)?;
            emit(json!(t.index()));
        }
        Command::Rank {
            family,
            n,
            perm,
            variant,
        } => {
            let p = parse_perm(&perm, n)?;
            let k = match family {
                Family::Ksnake => rank_k(&p),
                Family::Linf => LinfSnake::new(n, variant.into())?.rank(&p),
                Family::Rmgc => build_rmgc(n)?.rank(&p),
            }
            .map_err(not_member)?;
            emit(json!(k));
        }
        Command::Unrank {
            family,
            n,
            rank,
            variant,
        } => {
            let p = match family {
                Family::Ksnake => unrank_k(n, rank)?,
                Family::Linf => LinfSnake::new(n, variant.into())?.unrank(rank)?,
                Family::Rmgc => build_rmgc(n)?.unrank(rank)?,
            };
            println!("{p}");
        }
        Command::Verify {
            metric,
            input,
            force,
        } => {
            let text = match input {
                Some(path) => std::fs::read_to_string(&path)
                    .with_context(|| format!("cannot read {}", path.display()))?,
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| anyhow!("no JSON code record on input"))?;
            let record = CodeRecord::from_json(line).context("malformed JSON code record")?;
            let metric = metric
                .map(Metric::from)
                .or(record.metric)
                .ok_or_else(|| anyhow!("the record has no metric; pass --metric"))?;
            let code = record.to_code()?;
            if code.len() > VERIFY_DEFAULT_LIMIT && !force {
                bail!(
                    "{} codewords exceeds the pairwise limit of {VERIFY_DEFAULT_LIMIT}; pass --force",
                    code.len()
                );
            }
            let report = match verify_snake(&code, metric) {
                Ok(r) => r,
                Err(e) => {
                    emit(json!({ "valid": false, "metric": metric, "error": e.to_string() }));
                    return Err(Failed(e.to_string()).into());
                }
            };
            emit(serde_json::to_value(&report)?);
            if !report.valid {
                return Err(Failed(format!(
                    "not a snake: codewords {:?} at distance {:?}",
                    report.witness, report.min_pairwise_distance
                ))
                .into());
            }
            eprintln!("valid {} snake, M = {}", metric.name(), report.size);
        }
        Command::Search {
            n,
            metric,
            acyclic,
            transitions,
            budget,
            exhaustive,
            jobs,
        } => {
            let metric = Metric::from(metric);
            let mut spec = SearchSpec::new(n, metric)?;
            spec.cyclic = !acyclic;
            if let Some(t) = transitions {
                spec.allowed = t;
            }
            spec.jobs = jobs;
            let full = (2..=n).all(|i| spec.allowed.contains(&i));
            spec.node_budget = match (budget, exhaustive) {
                (Some(b), _) => Some(b),
                (None, false) if n >= 6 && full => {
                    eprintln!("using the default budget of {DEFAULT_BUDGET} nodes (--exhaustive lifts it)");
                    Some(DEFAULT_BUDGET)
                }
                _ => None,
            };
            let r = longest_snake(&spec)?;
            let octal = emit_octal_code(&r.best).ok();
            emit(json!({
                "size": r.size,
                "proven_optimal": r.proven_optimal,
                "exhausted": r.exhausted,
                "nodes": r.nodes,
                "code": CodeRecord::from_code(&r.best, Some(metric)),
                "octal": octal,
            }));
            eprintln!("best size {} after {} nodes", r.size, r.nodes);
        }
        Command::Bounds { n_range } => {
            let range =
                parse_range(&n_range).with_context(|| format!("bad --n-range {n_range:?}"))?;
            let rows = bounds_table(range)?;
            for row in &rows {
                emit(serde_json::to_value(row)?);
            }
            eprint!("{}", format_table(&rows));
        }
        Command::Repro { artifact } => repro::run(artifact)?,
    }
    Ok(())
}

fn not_member(e: rmsnake::Error) -> anyhow::Error {
    match e {
        rmsnake::Error::NotACodeword { .. } => Failed(e.to_string()).into(),
        other => other.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Failed>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
