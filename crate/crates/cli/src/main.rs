//! `conjgen`: conjugate generators, lemma sweeps and one-relator verdicts.
//!
//! Exit status: 0 on success, 1 when a lemma check fails (or, with
//! `--strict`, when the finding is negative), 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conjgen_core::almost_cyclic::{is_conjugate_generator, Analysis};
use conjgen_core::enumerate::enumerate_groups_exhaustive;
use conjgen_core::group::DEFAULT_ORDER_CAP;
use conjgen_core::presentation::{analyze_one_relator, parse_presentation, Classification};
use conjgen_core::sweep::{verify_all_with, SweepConfig};
use conjgen_core::{FiniteGroup, GroupFile};

const MAX_ORDER_VAR: &str = "CONJGEN_MAX_ORDER";

#[derive(Parser)]
#[command(
    name = "conjgen",
    version,
    about = "Almost cyclic groups: search, sweeps and verdicts"
)]
struct Cli {
    /// Exit with status 1 on a negative finding (not almost cyclic).
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a group given as a JSON Cayley table or permutation generators.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Analyze a finite presentation such as "< t, u | t u t^-1 u^-2 >".
    Presentation {
        #[command(subcommand)]
        command: PresentationCommand,
    },
    /// Run every lemma check over the group catalog.
    Verify {
        #[arg(long, default_value_t = 24)]
        max_order: usize,
        #[arg(long, default_value_t = 6)]
        exhaustive_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Extra group files to include, named by file stem.
        #[arg(long = "extra")]
        extra: Vec<PathBuf>,
    },
    /// List all groups of a small order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    Analyze { file: PathBuf },
    Subgroups { file: PathBuf },
}

#[derive(Subcommand)]
enum PresentationCommand {
    Analyze { text: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Outcome {
    Ok,
    Negative,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) if !cli.strict => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn order_cap() -> Result<usize> {
    match std::env::var(MAX_ORDER_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{MAX_ORDER_VAR} must be a nonnegative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn load_group(path: &Path, cap: usize) -> Result<FiniteGroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: GroupFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.build(cap)
        .with_context(|| format!("invalid group in {}", path.display()))
}

/// Writes to stdout; a closed pipe (`conjgen verify | head`) is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Group { command } => match command {
            GroupCommand::Analyze { file } => group_analyze(file),
            GroupCommand::Subgroups { file } => group_subgroups(file),
        },
        Command::Presentation {
            command: PresentationCommand::Analyze { text },
        } => {
            let p = parse_presentation(text)?;
            let verdict = analyze_one_relator(&p)?;
            print_json(&verdict)?;
            Ok(match verdict.classification {
                Classification::NotAlmostCyclic => Outcome::Negative,
                _ => Outcome::Ok,
            })
        }
        Command::Verify {
            max_order,
            exhaustive_order,
            format,
            jobs,
            extra,
        } => {
            let cap = order_cap()?;
            if *max_order > cap {
                bail!("--max-order {max_order} exceeds the cap of {cap} (set {MAX_ORDER_VAR} to raise it)");
            }
            let config = SweepConfig {
                max_order: *max_order,
                exhaustive_order: *exhaustive_order,
                jobs: *jobs,
                subgroup_cap: cap,
            };
            let extra = extra
                .iter()
                .map(|path| {
                    let text = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let file: GroupFile = serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", path.display()))?;
                    let name = path.file_stem().map_or_else(
                        || path.display().to_string(),
                        |s| s.to_string_lossy().into_owned(),
                    );
                    Ok((name, file))
                })
                .collect::<Result<Vec<_>>>()?;
            let report = verify_all_with(&config, &extra)?;
            match format {
                Format::Json => emit(&(report.to_json() + "\n"))?,
                Format::Text => emit(&report.to_text())?,
            }
            Ok(if report.all_passed() {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
        Command::Enumerate { order } => {
            let groups = enumerate_groups_exhaustive(*order)?;
            let tables: Vec<GroupFile> = groups.iter().map(GroupFile::from).collect();
            print_json(&json!({
                "order": order,
                "count": groups.len(),
                "groups": tables,
            }))?;
            Ok(Outcome::Ok)
        }
    }
}

fn group_analyze(path: &Path) -> Result<Outcome> {
    let g = load_group(path, order_cap()?)?;
    let name = path
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let analysis = Analysis::new(&g, &name);
    let gens = analysis.conjugate_generators();
    let certificate = gens.first().and_then(|&x| is_conjugate_generator(&g, x));
    let label = |a: usize| Value::String(g.label(a));
    let report = json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "cyclic": g.is_cyclic().is_some(),
        "almost_cyclic": analysis.is_almost_cyclic(),
        "elements": g.elements().map(label).collect::<Vec<_>>(),
        "element_orders": g.elements().map(|a| g.element_order(a)).collect::<Vec<_>>(),
        "conjugacy_classes": g.conjugacy_classes(),
        "center": g.center().members(),
        "conjugate_generators": gens,
        "certificate": certificate,
    });
    print_json(&report)?;
    Ok(if analysis.is_almost_cyclic() {
        Outcome::Ok
    } else {
        Outcome::Negative
    })
}

fn group_subgroups(path: &Path) -> Result<Outcome> {
    let cap = order_cap()?;
    let g = load_group(path, cap)?;
    let subgroups = g.all_subgroups_capped(cap)?;
    let list: Vec<Value> = subgroups
        .iter()
        .map(|h| {
            json!({
                "order": h.order(),
                "index": h.index(),
                "normal": g.is_normal(h),
                "cyclic": h.members().iter().any(|&a| g.element_order(a) == h.order()),
                "members": h.members(),
            })
        })
        .collect();
    print_json(&json!({ "order": g.order(), "count": list.len(), "subgroups": list }))?;
    Ok(Outcome::Ok)
}
