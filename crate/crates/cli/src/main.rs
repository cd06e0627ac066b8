use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dimlab::absorb::{check_partition_hypothesis, ChainProductPresentation, CoordinatePartition};
use dimlab::boolean::{verify_boolean_representation, BooleanRepresentation};
use dimlab::facts::{reproduce, FactOptions, FactStatus};
use dimlab::invariants::{absorbency, bounded_dimension, InvariantError};
use dimlab::io::{self, PresentationDoc};
use dimlab::order::{check_embedding, connected_components, Embedding, Poset, Realizer};
use dimlab::probe::{probe, ProbeOptions};
use dimlab::solver::{dimension_via_components, se_lower_bound, SearchBudget, SolverError};

mod family;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "dimlab", version, about = "Exact order dimension with checkable certificates")]
struct Cli {
    /// Wall-clock limit per solver call, in seconds.
    #[arg(long, global = true, env = "DIMLAB_BUDGET_SECONDS", default_value_t = 60.0)]
    budget_seconds: f64,
    /// Node limit per solver call.
    #[arg(long, global = true)]
    nodes: Option<u64>,
    /// Split realizer searches across threads.
    #[arg(long, global = true)]
    parallel: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Chain length used to probe absorbency beyond 2-element chains.
    #[arg(long, global = true, default_value_t = 2)]
    chain_probe_length: usize,
    /// Output file (or directory for `reproduce`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable; for posets, a Hasse listing.
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a poset from a family: chain K, antichain K, cube D, standard N,
    /// slice D A B, band D, product TOKEN..., lexsum INDEX TOKEN...
    /// (tokens look like standard:3 or slice:4,1,2).
    Generate { family: String, params: Vec<String> },
    /// Exact dimension with a realizer certificate.
    Dim { poset: PathBuf },
    /// Dimension, bounded dimension, absorbency bounds, standard example size, components.
    Invariants { poset: PathBuf },
    /// Re-check a certificate file against a poset file.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Recompute a named set of facts: core, corollaries, absorbency, baker, boolean, all.
    Reproduce {
        set: String,
        /// Random trials for the additivity facts.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Collect evidence on a question: Q.bound_2, Q.2_vs_C, Q.Px2x2, Q.abs, Q.cnnctd.
    Probe {
        question: String,
        /// Exhaustive corpus up to this many elements.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        random_pairs: usize,
        #[arg(long, default_value_t = 6)]
        random_n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Certificate: one permutation of element indices per line.
    Realizer { poset: PathBuf, certificate: PathBuf },
    /// JSON `{"target_chains": [...], "image": [[...], ...]}`.
    Embedding { poset: PathBuf, embedding: PathBuf },
    /// Presentation JSON `{"chain_lengths", "coords"}` and partition JSON `{"parts": [[[i, v], ...], ...]}`.
    Partition { poset: PathBuf, presentation: PathBuf, partition: PathBuf },
    /// JSON `{"orderings": [[...], ...], "accepted": [[0, 1, ...], ...]}`.
    BooleanRep { poset: PathBuf, representation: PathBuf },
}

/// Errors that map to the usage exit code.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("reading {}: {e}", path.display())).into())
}

fn load_poset(path: &Path) -> Result<Poset> {
    io::read_poset(&read(path)?).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
}

fn load_json<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T> {
    io::from_json(&read(path)?).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

impl Cli {
    fn budget(&self) -> Result<SearchBudget> {
        if !(self.budget_seconds.is_finite() && self.budget_seconds > 0.0) {
            bail!(Usage("--budget-seconds must be positive".into()));
        }
        let mut b = SearchBudget::default().parallel(self.parallel);
        b.time_limit = Duration::from_secs_f64(self.budget_seconds);
        if let Some(n) = self.nodes {
            b = b.nodes(n);
        }
        Ok(b)
    }
}

fn cmd_generate(cli: &Cli, family_name: &str, params: &[String]) -> Result<u8> {
    let p = family::generate(family_name, params).map_err(|e| Usage(format!("{e:#}")))?;
    let text = match cli.format {
        Format::Json => io::write_poset(&p),
        Format::Text => p.hasse_listing(),
    };
    emit(cli.out.as_deref(), &text)?;
    eprintln!("{} elements", p.len());
    Ok(0)
}

fn realizer_text(r: &Realizer) -> String {
    let orders: Vec<Vec<usize>> = r.extensions().iter().map(|e| e.order().to_vec()).collect();
    io::write_realizer(&orders)
}

fn cmd_dim(cli: &Cli, path: &Path) -> Result<u8> {
    let p = load_poset(path)?;
    match dimension_via_components(&p, cli.budget()?) {
        Ok(r) => {
            debug_assert!(r.certificate.is_realizer_of(&p));
            if let Some(out) = &cli.out {
                emit(Some(out), &realizer_text(&r.certificate))?;
            }
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "dimension": r.value,
                        "exact": true,
                        "lower_bound": format!("{:?}", r.lower_bound),
                        "nodes": r.stats.nodes,
                        "realizer": r.certificate.extensions().iter().map(|e| e.order().to_vec()).collect::<Vec<_>>(),
                    })
                ),
                Format::Text => {
                    println!("dimension {}", r.value);
                    if cli.out.is_none() {
                        print!("{}", realizer_text(&r.certificate));
                    }
                }
            }
            Ok(0)
        }
        Err(SolverError::BudgetExhausted { lower, upper, certificate, .. }) => {
            if let Some(out) = &cli.out {
                emit(Some(out), &realizer_text(&certificate))?;
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::json!({ "dimension": [lower, upper], "exact": false })),
                Format::Text => println!("dimension in [{lower}, {upper}] (budget exhausted)"),
            }
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_invariants(cli: &Cli, path: &Path) -> Result<u8> {
    let p = load_poset(path)?;
    let budget = cli.budget()?;
    let report = match absorbency(&p, budget, cli.chain_probe_length) {
        Ok(r) => r,
        Err(InvariantError::Solver(SolverError::BudgetExhausted { lower, upper, .. })) => {
            println!("budget exhausted; some dimension lies in [{lower}, {upper}]");
            return Ok(EXIT_BUDGET);
        }
        Err(e) => return Err(e.into()),
    };
    let bd = bounded_dimension(&p, budget)?;
    let se = se_lower_bound(&p);
    let components = connected_components(&p).len();
    let (lo, hi) = report.interval();
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "elements": p.len(),
                "dim": report.dim,
                "bd_dim": report.bd_dim,
                "bd_witness": [p.label(bd.witness.0), p.label(bd.witness.1)],
                "absorbency": report,
                "standard_example": se,
                "components": components,
            })
        ),
        Format::Text => {
            let abs = if report.exact { lo.to_string() } else { format!("[{lo}, {hi}]") };
            println!("elements          {}", p.len());
            println!("dim               {}", report.dim);
            println!(
                "bd_dim            {} (interval [{}, {}])",
                report.bd_dim,
                p.label(bd.witness.0),
                p.label(bd.witness.1)
            );
            println!("abs               {abs}");
            println!("  certified lower {}", report.certified_lower);
            println!("  dim - bd_dim    {}", report.upper_bound);
            println!("  chain probes    {} (length {})", report.abs2, report.tested_chain_length);
            println!("standard example  {se}");
            println!("components        {components}");
        }
    }
    Ok(if report.exact { 0 } else { EXIT_BUDGET })
}

fn verdict(result: std::result::Result<(), String>) -> u8 {
    match result {
        Ok(()) => {
            println!("valid");
            0
        }
        Err(why) => {
            println!("invalid: {why}");
            EXIT_FAILED
        }
    }
}

fn cmd_verify(what: &Verify) -> Result<u8> {
    Ok(match what {
        Verify::Realizer { poset, certificate } => {
            let p = load_poset(poset)?;
            let orders = io::read_realizer(&read(certificate)?).map_err(|e| Usage(e.to_string()))?;
            verdict(Realizer::new(&p, orders).map(|r| println!("{} extensions", r.len())).map_err(|e| e.to_string()))
        }
        Verify::Embedding { poset, embedding } => {
            let p = load_poset(poset)?;
            let e: Embedding = load_json(embedding)?;
            verdict(
                e.check_shape(&p)
                    .map_err(|err| err.to_string())
                    .and_then(|()| check_embedding(&p, &e).map_err(|v| format!("{v:?}"))),
            )
        }
        Verify::Partition { poset, presentation, partition } => {
            let p = load_poset(poset)?;
            let doc: PresentationDoc = load_json(presentation)?;
            let parts: CoordinatePartition = load_json(partition)?;
            let check = ChainProductPresentation::new(p, doc.chain_lengths, doc.coords)
                .map_err(|e| e.to_string())
                .and_then(|pres| {
                    CoordinatePartition::new(parts.parts().to_vec()).map_err(|e| e.to_string())?;
                    check_partition_hypothesis(&pres, &parts).map_err(|w| {
                        format!(
                            "{} <= {} share no coordinate valued in part {}",
                            pres.base().label(w.p),
                            pres.base().label(w.q),
                            w.part
                        )
                    })
                });
            verdict(check)
        }
        Verify::BooleanRep { poset, representation } => {
            let p = load_poset(poset)?;
            let rep: BooleanRepresentation = load_json(representation)?;
            verdict(verify_boolean_representation(&p, &rep).map_err(|d| d.to_string()))
        }
    })
}

fn cmd_reproduce(cli: &Cli, set: &str, trials: usize, seed: u64) -> Result<u8> {
    let opts = FactOptions { budget: cli.budget()?, baker_trials: trials, seed };
    let records = reproduce(set, &opts).map_err(|e| Usage(e.to_string()))?;
    if let Some(dir) = &cli.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for r in &records {
            if let Some(cert) = &r.certificate {
                std::fs::write(dir.join(format!("{}.cert", r.id)), cert)?;
            }
        }
    }
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&records)?),
        Format::Text => {
            let w = records.iter().map(|r| r.id.len()).max().unwrap_or(0);
            for r in &records {
                println!(
                    "{:<6} {:<w$}  expected {:<12} computed {:<12} {}",
                    r.status, r.id, r.expected, r.computed, r.description
                );
            }
        }
    }
    let failed = records.iter().any(|r| r.status == FactStatus::Fail);
    let budget = records.iter().any(|r| r.status == FactStatus::Budget);
    Ok(if failed {
        EXIT_FAILED
    } else if budget {
        EXIT_BUDGET
    } else {
        0
    })
}

fn cmd_probe(cli: &Cli, question: &str, opts: ProbeOptions) -> Result<u8> {
    let s = probe(question, &opts).map_err(|e| Usage(e.to_string()))?;
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&s)?),
        Format::Text => {
            println!(
                "{}: {} instances, {} skipped, {} violations",
                s.question,
                s.instances,
                s.skipped,
                s.violations.len()
            );
            for v in &s.violations {
                println!("violation: {v}");
            }
            for n in &s.notes {
                println!("note: {n}");
            }
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Generate { family, params } => cmd_generate(cli, family, params),
        Command::Dim { poset } => cmd_dim(cli, poset),
        Command::Invariants { poset } => cmd_invariants(cli, poset),
        Command::Verify { what } => cmd_verify(what),
        Command::Reproduce { set, trials, seed } => cmd_reproduce(cli, set, *trials, *seed),
        Command::Probe { question, max_n, random_pairs, random_n, seed } => {
            let opts = ProbeOptions {
                max_n: *max_n,
                random_pairs: *random_pairs,
                random_n: *random_n,
                seed: *seed,
                budget: cli.budget()?,
                ..ProbeOptions::default()
            };
            cmd_probe(cli, question, opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<Usage>().is_some() { EXIT_USAGE } else { EXIT_FAILED })
        }
    }
}
