//! `treemult`: eigenvalue multiplicities, family classification and
//! verification sweeps for trees.

mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;
use treemult_core::families::{generate, Classifier};
use treemult_core::spectrum::{char_poly, multiplicity};
use treemult_core::tree::enumerate_trees;
use treemult_core::verify::{
    chebyshev_completeness_audit, lemma_suite, summarize_file, summary_path_for, LemmaReport,
    SweepSummary,
};
use treemult_core::{FamilyKind, Gamma2Mode, LambdaSpec, SweepConfig, TreeError, VerifyError};

use input::TreeInput;

/// Directory for `verify` output when `--out` is not given.
const OUT_DIR_ENV: &str = "TREEMULT_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("NOT_A_TREE: {0}")]
    Tree(#[from] TreeError),
    #[error("{0}")]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "treemult", version, about = "Eigenvalue multiplicities of trees at 2cos(i*pi/M)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiplicity m(T, lambda), pendant count p and major count gamma.
    Mult {
        #[command(flatten)]
        tree: TreeInput,
        /// lambda = 2cos(i*pi/M), written i/M.
        #[arg(long)]
        lambda: LambdaSpec,
    },
    /// Characteristic polynomial det(xI - A).
    Charpoly {
        #[command(flatten)]
        tree: TreeInput,
    },
    /// Family membership with its witness chain.
    Classify {
        #[command(flatten)]
        tree: TreeInput,
        #[arg(long)]
        lambda: LambdaSpec,
        /// Reading of Gamma2_0: strict, broad or corrected.
        #[arg(long, default_value = "broad")]
        mode: Gamma2Mode,
    },
    /// Stream family members as canonical graph6.
    Generate {
        /// gamma or gamma2.
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: LambdaSpec,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "broad")]
        mode: Gamma2Mode,
    },
    /// Stream every tree on n vertices as canonical graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive sweep; exits 1 if any non-strict violation is found.
    Verify {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        m_max: u64,
        /// Comma-separated readings of Gamma2_0.
        #[arg(long, value_delimiter = ',', default_value = "broad,strict")]
        modes: Vec<Gamma2Mode>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Record file; defaults to $TREEMULT_OUT_DIR/records.jsonl.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also run the lemma suites over the same range.
        #[arg(long)]
        lemmas: bool,
    },
    /// Non-Chebyshev eigenvalues of every tree up to n_max vertices.
    Audit {
        #[arg(long)]
        n_max: usize,
    },
    /// Re-summarize a record file written by `verify`.
    Report { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Prints one line; a closed pipe (`| head`) ends the program quietly.
fn say(line: impl std::fmt::Display) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

fn emit(format: Format, human: String, value: serde_json::Value) {
    match format {
        Format::Human => say(human),
        Format::Json => say(value),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Mult { tree, lambda } => {
            for t in tree.trees()? {
                let (m, p, g) = (multiplicity(&t, &lambda), t.pendant_count(), t.major_count());
                emit(format, format!("m={m} p={p} gamma={g}"), json!({"m": m, "p": p, "gamma": g}));
            }
        }
        Command::Charpoly { tree } => {
            for t in tree.trees()? {
                let f = char_poly(&t);
                let coeffs: Vec<String> = f.coeffs().iter().map(ToString::to_string).collect();
                emit(
                    format,
                    format!("{f}\ncoefficients (ascending): {}", coeffs.join(" ")),
                    json!({"poly": f.to_string(), "coefficients": coeffs}),
                );
            }
        }
        Command::Classify { tree, lambda, mode } => {
            let classifier = Classifier::new();
            for t in tree.trees()? {
                let r = classifier.classify(&t, &lambda, mode);
                let value = json!({
                    "family": r.family.to_string(),
                    "witness": serde_json::to_value(&r.witness).expect("witness serializes"),
                });
                emit(format, r.to_string(), value);
            }
        }
        Command::Generate { family, k, lambda, n_max, mode } => {
            for t in generate(family, k, &lambda, n_max, mode)? {
                let g6 = t.to_graph6();
                emit(format, g6.clone(), json!({"graph6": g6, "n": t.n()}));
            }
        }
        Command::Enumerate { n } => {
            for t in enumerate_trees(n)? {
                let g6 = t.to_graph6();
                emit(format, g6.clone(), json!({"graph6": g6, "n": t.n()}));
            }
        }
        Command::Verify { n_min, n_max, m_max, modes, workers, out, lemmas } => {
            let output = out.unwrap_or_else(|| {
                let dir = std::env::var_os(OUT_DIR_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from);
                dir.join("records.jsonl")
            });
            let config = SweepConfig {
                n_min,
                n_max,
                m_max,
                modes,
                workers,
                output: Some(output.clone()),
                ..SweepConfig::default()
            };
            let report = treemult_core::sweep(&config)?;
            let mut failures = report.summary.violations();
            print_summary(format, &report.summary, Some(&output));
            if lemmas {
                let lemma_report = lemma_suite(&config)?;
                failures += lemma_report.total_violations();
                print_lemmas(format, &lemma_report);
            }
            return Ok(exit_for(failures));
        }
        Command::Audit { n_max } => {
            let report = chebyshev_completeness_audit(n_max)?;
            let mut human = format!(
                "trees={} flags={} scope_notes={}",
                report.trees,
                report.flags.len(),
                report.scope_notes.len()
            );
            for (kind, list) in [("flag", &report.flags), ("scope", &report.scope_notes)] {
                for e in list {
                    human += &format!("\n{kind} {} p={} m={} residue={}", e.tree, e.p, e.multiplicity, e.residue);
                }
            }
            emit(format, human, serde_json::to_value(&report).expect("report serializes"));
        }
        Command::Report { path } => {
            let summary = summarize_file(&path)?;
            print_summary(format, &summary, None);
            return Ok(exit_for(summary.violations()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_for(failures: usize) -> ExitCode {
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_summary(format: Format, s: &SweepSummary, records: Option<&std::path::Path>) {
    if format == Format::Json {
        say(serde_json::to_string(s).expect("summary serializes"));
        return;
    }
    say(format!("trees {}  pairs {}  n {}..{}  M <= {}", s.trees, s.pairs, s.n_min, s.n_max, s.m_max));
    say(format!("engine checks      {}", s.engine_checks));
    say(format!("bound violations   {}", s.bound_violations));
    say(format!("p-1 violations     {}", s.p_minus_one_violations));
    for m in &s.p_minus_two {
        say(format!(
            "p-2 {:<9} {} {} (if {}, only-if {}) of {} applicable",
            m.mode, m.kind, m.total, m.if_direction, m.only_if_direction, m.applicable
        ));
        for e in m.examples.iter().take(5) {
            say(format!("    {e}"));
        }
    }
    if let Some(path) = records {
        say(format!("records {}  summary {}", path.display(), summary_path_for(path).display()));
    }
    if s.runtime_seconds > 0.0 {
        say(format!("runtime {:.2}s", s.runtime_seconds));
    }
}

fn print_lemmas(format: Format, r: &LemmaReport) {
    if format == Format::Json {
        say(serde_json::to_string(r).expect("lemma report serializes"));
        return;
    }
    for o in &r.outcomes {
        say(format!("lemma {:<24} checked {:>7}  violations {}", o.name, o.checked, o.violations.len()));
    }
}
