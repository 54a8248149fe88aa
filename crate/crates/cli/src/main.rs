use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use ontoscope::classify::{contextuality_at_level, ContextualityLevel};
use ontoscope::harness::{
    theorem1_check, theorem2_check, theorem3::theorem3_enumerate_with_grid, theorem3_lp,
    PatternSearch, Theorem3Mode, DEFAULT_LP_CAP,
};
use ontoscope::io::report::{Theorem1Json, Theorem2Json};
use ontoscope::io::{
    certificate_report, classification_report, load_model, overlap_rows, save_model,
    write_overlaps_csv, RunConfig, SEED_ENV,
};
use ontoscope::ontic::pure_state_of;
use ontoscope::zoo::{ks_named_states, ZooKind, ZooModelSpec};
use ontoscope::{OntologicalModel, QuantumState};

/// Ontological models of qubit theory: build, classify, certify.
#[derive(Debug, Parser)]
#[command(name = "ontoscope", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// TOML file with run settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, env = SEED_ENV)]
    seed: Option<u64>,
    /// Numerical tolerance for verdicts.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Number of state pairs to sample.
    #[arg(long, global = true)]
    pair_budget: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a reference model as JSON.
    Zoo {
        /// ks, bb, witness, truncated or twin.
        kind: String,
        /// Sphere grid size.
        #[arg(long)]
        n: Option<usize>,
        /// Number of seeded states (bb only).
        #[arg(long, default_value_t = 8)]
        states: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify a model and print a JSON report.
    Classify {
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one of the three theorems.
    Theorem {
        #[command(subcommand)]
        which: TheoremCommand,
    },
    /// Overlap table for sampled state pairs, as CSV.
    Overlaps {
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum TheoremCommand {
    /// Support-integral identity for two decompositions of I/2.
    #[command(name = "1")]
    One {
        #[arg(long)]
        model: PathBuf,
        /// Named state: 0, 1, +, -, +i, -i, A2+, A2-, A3+, A3-.
        #[arg(long)]
        chi: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal overlap of two procedures for one pure state.
    #[command(name = "2")]
    Two {
        #[arg(long)]
        model: PathBuf,
        /// Preparation labels; default is the first pure state with two procedures.
        #[arg(long, requires = "p2")]
        p1: Option<String>,
        #[arg(long, requires = "p1")]
        p2: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trine decompositions: feasibility under each kind of noncontextuality.
    #[command(name = "3")]
    Three {
        /// both-nc, pure-contextual or mixed-contextual.
        #[arg(long)]
        mode: String,
        /// Also run the LP search on this many ontic points.
        #[arg(long)]
        lp_size: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run_config(g: &GlobalArgs) -> Result<RunConfig> {
    let mut config = match &g.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = g.seed {
        config.seed = seed;
    }
    if let Some(t) = g.tolerance {
        config.tolerance = t;
    }
    if let Some(b) = g.pair_budget {
        config.pair_budget = b;
    }
    config.validate()?;
    Ok(config)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json<T: serde::Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut w = output(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn named_state(name: &str) -> Result<QuantumState> {
    ks_named_states()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| anyhow!("unknown state `{name}` (expected 0, 1, +, -, +i, -i, A2±, A3±)"))
}

fn load(path: &Path) -> Result<OntologicalModel> {
    load_model(path).with_context(|| format!("cannot load model {}", path.display()))
}

fn verdict(ok: bool, message: String) -> ExitCode {
    eprintln!("{message}");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = run_config(&cli.global)?;
    match cli.command {
        Command::Zoo { kind, n, states, out } => {
            let kind = ZooKind::parse(&kind).ok_or_else(|| anyhow!("unknown model kind `{kind}`"))?;
            let mut spec = ZooModelSpec::new(kind, n.unwrap_or(config.grid_size), config.seed);
            spec.states = states;
            let model = spec.build()?;
            save_model(&model, &out)?;
            eprintln!(
                "wrote {} ({} points, {} preparations, {} measurements)",
                out.display(),
                model.space().len(),
                model.preparations().len(),
                model.measurements().len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { model, out } => {
            let model = load(&model)?;
            let report = classification_report(&model, &config)?;
            write_json(&report, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Overlaps { model, out } => {
            let model = load(&model)?;
            let rows = overlap_rows(&model, &config)?;
            write_overlaps_csv(&rows, output(out.as_deref())?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Theorem { which } => run_theorem(which, &config),
    }
}

fn run_theorem(which: TheoremCommand, config: &RunConfig) -> Result<ExitCode> {
    match which {
        TheoremCommand::One { model, chi, eta, out } => {
            let model = load(&model)?;
            let report = theorem1_check(&model, &named_state(&chi)?, &named_state(&eta)?, config.tolerance)?;
            write_json(&Theorem1Json::from(&report), out.as_deref())?;
            Ok(verdict(
                report.conclusion,
                format!("theorem 1: lhs = {:.6}, conclusion {}", report.lhs_eq12, report.conclusion),
            ))
        }
        TheoremCommand::Two { model, p1, p2, out } => {
            let model = load(&model)?;
            let (a, b) = match (p1, p2) {
                (Some(a), Some(b)) => {
                    let get = |l: &str| model.preparation(l).ok_or_else(|| anyhow!("no preparation `{l}`"));
                    (get(&a)?, get(&b)?)
                }
                _ => {
                    let v = contextuality_at_level(&model, ContextualityLevel::PureState, config.tolerance)?;
                    let (a, b) = v
                        .witness
                        .map(|w| w.procedures)
                        .ok_or_else(|| anyhow!("model has no pure state with two preparation procedures"))?;
                    (model.preparation(&a).unwrap(), model.preparation(&b).unwrap())
                }
            };
            let psi = pure_state_of(&a.target)
                .ok_or_else(|| anyhow!("preparation `{}` does not target a pure state", a.label))?;
            let report = theorem2_check(&psi, a, b, config.tolerance)?;
            write_json(&Theorem2Json::from(&report), out.as_deref())?;
            Ok(verdict(
                report.implication_holds,
                format!(
                    "theorem 2: L_C = {:.6}, TV = {:.3e}, implication {}",
                    report.l_c, report.total_variation, report.implication_holds
                ),
            ))
        }
        TheoremCommand::Three { mode, lp_size, out } => {
            let mode = Theorem3Mode::parse(&mode).ok_or_else(|| anyhow!("unknown mode `{mode}`"))?;
            let cert = theorem3_enumerate_with_grid(mode, config.grid_size);
            let expected = mode != Theorem3Mode::BothNoncontextual;
            let mut agree = true;
            let mut report = certificate_report(&cert);
            if let Some(n) = lp_size {
                let lp = theorem3_lp(n, mode, &PatternSearch::UpToPermutation, DEFAULT_LP_CAP)?;
                agree = lp.feasible == cert.feasible;
                report.lp = certificate_report(&lp).lp;
            }
            write_json(&report, out.as_deref())?;
            Ok(verdict(
                cert.feasible == expected && agree,
                format!(
                    "theorem 3 ({}): feasible = {}{}",
                    mode.name(),
                    cert.feasible,
                    if agree { "" } else { ", LP search disagrees" }
                ),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
