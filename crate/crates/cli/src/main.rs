//! `idverify`: list, show and verify the built-in identity corpus.

mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use idverify_core::corpus::{builtin_manifest, verify_all, Filter, Identity, Profile, Report, RunConfig, Status};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] idverify_core::Error),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

#[derive(Debug, Parser)]
#[command(name = "idverify", version, about = "Check closed-form identities numerically and exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the selected identities and report pass/fail for each.
    Verify,
    /// Print one line per selected identity.
    List,
    /// Print every field of the selected identities.
    Show {
        /// Identity ids, combined with --filter.
        ids: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct Options {
    /// Selection, KEY=VALUE[,...] with keys id, category, source, tag.
    #[arg(long, global = true, default_value = "")]
    filter: String,
    /// fast loosens tolerances 100x and cuts work budgets 10x.
    #[arg(long, global = true, env = "IDVERIFY_PROFILE", default_value = "full", value_parser = ["fast", "full"])]
    profile: String,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Write the report as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the report as Markdown.
    #[arg(long, global = true, value_name = "PATH")]
    md: Option<PathBuf>,
    /// Multiplies every tolerance.
    #[arg(long = "tol-scale", global = true, default_value_t = 1.0, value_name = "X")]
    tol_scale: f64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("idverify: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut filter = Filter::parse(&cli.opts.filter)?;
    if let Command::Show { ids } = &cli.command {
        for id in ids {
            filter = filter.with(idverify_core::corpus::FilterKey::Id, id);
        }
    }
    let registry = builtin_manifest();
    // an id that names nothing is a usage error rather than an empty run
    for id in filter.ids() {
        registry.get(id)?;
    }
    let profile: Profile = cli.opts.profile.parse()?;
    let cfg = RunConfig::new(profile, cli.opts.seed, cli.opts.tol_scale)?;

    let mut out = io::stdout().lock();
    let print = |out: &mut io::StdoutLock, s: String| {
        let _ = writeln!(out, "{s}");
    };
    match cli.command {
        Command::List => {
            for e in registry.select(&filter) {
                print(&mut out, format!("{:<14} {:<20} {}", e.id, e.category.name(), e.expected.describe()));
            }
            Ok(0)
        }
        Command::Show { .. } => {
            let mut first = true;
            for e in registry.select(&filter) {
                if !first {
                    print(&mut out, String::new());
                }
                first = false;
                print(&mut out, describe(e, &cfg));
            }
            Ok(0)
        }
        Command::Verify => {
            let report = verify_all(&filter, cli.opts.jobs as usize, &cfg)?;
            for o in &report.outcomes {
                let mut line = format!(
                    "{:<14} {:<5} computed {:>23} expected {:>23} abs_err {:.3e} tol {:.1e} {:.3}s",
                    o.id,
                    o.status.name(),
                    format!("{:.16e}", o.computed),
                    format!("{:.16e}", o.expected),
                    o.abs_err,
                    o.tol,
                    o.seconds
                );
                if let Some(msg) = &o.message {
                    line.push_str(&format!("  ({msg})"));
                }
                print(&mut out, line);
            }
            let s = report.summary;
            print(&mut out, format!("summary: {} pass, {} fail, {} error of {}", s.pass, s.fail, s.error, s.total()));
            if let Some(path) = &cli.opts.json {
                write_file(path, &report::to_json(&report))?;
            }
            if let Some(path) = &cli.opts.md {
                write_file(path, &report::to_markdown(&report))?;
            }
            Ok(exit_code(&report))
        }
    }
}

fn exit_code(report: &Report) -> u8 {
    if report.outcomes.iter().all(|o| o.status == Status::Pass) {
        0
    } else {
        1
    }
}

fn describe(e: &Identity, cfg: &RunConfig) -> String {
    let mut lines = vec![
        format!("id:        {}", e.id),
        format!("source:    {}", e.source),
        format!("category:  {}", e.category),
        format!("statement: {}", e.statement),
        format!("expected:  {}", e.expected.describe()),
    ];
    if let Ok(Some(v)) = e.expected_value() {
        lines.push(format!("value:     {v:.16e}"));
    }
    lines.push(format!("tol:       {:.1e} ({:.1e} under the {} profile)", e.tol, cfg.tol(e.tol), cfg.profile.name()));
    if !e.tags.is_empty() {
        lines.push(format!("tags:      {}", e.tags.join(", ")));
    }
    lines.push(format!("quote:     {}", e.quote));
    if let Some(n) = e.note {
        lines.push(format!("note:      {n}"));
    }
    lines.join("\n")
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|source| CliError::Write { path: path.to_path_buf(), source })
}
