//! The `ddl` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, Family};
use crate::diff::{run_diff, DiffParams};
use crate::engine::{compute_extension, EngineConfig};
use crate::extension::{Extension, Sign, Tagged};
use crate::model::{DefeaterMode, Literal, Modality, Theory};
use crate::parser::{parse_theory, serialize_extension, serialize_theory, ExtensionFormat};
use crate::queries::{answer, check_consistency, explain, QueryTag};

#[derive(Parser, Debug)]
#[command(name = "ddl", version, about = "Defeasible deontic logic reasoner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Consistency report (exit 0 consistent, 2 inconsistent).
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the extension.
    Extension {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Ask for one tag (exit 0 yes, 3 no, 4 undetermined).
    Query {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        tag: QueryTag,
        #[arg(long, allow_hyphen_values = true)]
        literal: String,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Print the proof of a tagged literal.
    Explain {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        tag: QueryTag,
        #[arg(long, allow_hyphen_values = true)]
        literal: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Compare the engine with the reference prover on random theories.
    OracleDiff {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 8)]
        max_atoms: usize,
        #[arg(long, default_value_t = 12)]
        max_rules: usize,
    },
    /// Measure the engine on a scaling family.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1000, 10000, 100000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value = "chain")]
        family: Family,
    },
    /// Reformat a theory file.
    Fmt { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    #[arg(long, default_value_t = DefeaterMode::RulesOnly)]
    defeater_mode: DefeaterMode,
    /// Let `P l` premises hold once `O ~l` is refuted.
    #[arg(long)]
    weak_perm_antecedent: bool,
}

impl From<&ConfigArgs> for EngineConfig {
    fn from(a: &ConfigArgs) -> Self {
        EngineConfig {
            defeater_mode: a.defeater_mode,
            weak_perm_antecedent: a.weak_perm_antecedent,
        }
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Option<Theory> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", path.display());
            return None;
        }
    };
    match parse_theory(&text) {
        Ok(t) => Some(t),
        Err(errors) => {
            for e in errors {
                let _ = writeln!(
                    err,
                    "{}:{}:{}: {}: {}",
                    path.display(),
                    e.span.line,
                    e.span.column,
                    e.kind,
                    e.message
                );
            }
            None
        }
    }
}

fn warn_inconsistent(e: &Extension, err: &mut dyn Write) {
    if e.input_inconsistent {
        let _ = writeln!(err, "warning: the input theory is inconsistent");
    }
}

/// Runs the command line on `args` and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match cli.command {
        Command::Check { file, format } => {
            let Some(t) = load(&file, err) else { return 1 };
            let report = check_consistency(&t);
            match format {
                Format::Json => {
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
                }
                Format::Text => {
                    let _ = writeln!(out, "consistent: {}", report.consistent);
                    let _ = writeln!(out, "o-consistent: {}", report.o_consistent);
                    for v in &report.violations {
                        let kind = serde_json::to_value(v.kind).expect("serializable");
                        let _ = writeln!(out, "{}: {}", kind.as_str().unwrap_or_default(), v.detail);
                    }
                }
            }
            if report.consistent {
                0
            } else {
                2
            }
        }
        Command::Extension { file, format, config } => {
            let Some(t) = load(&file, err) else { return 1 };
            let e = compute_extension(&t, (&config).into());
            warn_inconsistent(&e, err);
            let fmt = match format {
                Format::Json => ExtensionFormat::Json,
                Format::Text => ExtensionFormat::Text,
            };
            let _ = write!(out, "{}", serialize_extension(&e, fmt));
            0
        }
        Command::Query {
            file,
            tag,
            literal,
            config,
        } => {
            let Some(t) = load(&file, err) else { return 1 };
            let e = compute_extension(&t, (&config).into());
            warn_inconsistent(&e, err);
            let a = answer(&e, tag, &Literal::from_str_lossy(&literal));
            let _ = writeln!(out, "{a}");
            a.exit_code()
        }
        Command::Explain {
            file,
            tag,
            literal,
            format,
            config,
        } => {
            let Some(t) = load(&file, err) else { return 1 };
            let l = Literal::from_str_lossy(&literal);
            // weak permission of l is the refutation of O ~l
            let target = tag
                .tagged(l.clone())
                .unwrap_or_else(|| Tagged::new(Sign::Minus, Modality::O, l.complement()));
            match explain(&t, (&config).into(), &target) {
                Ok(trace) => {
                    let _ = match format {
                        Format::Json => writeln!(out, "{}", trace.to_json()),
                        Format::Text => write!(out, "{}", trace.to_text()),
                    };
                    0
                }
                Err(e) => {
                    let _ = writeln!(out, "not derivable: {e}");
                    3
                }
            }
        }
        Command::OracleDiff {
            seed,
            cases,
            max_atoms,
            max_rules,
        } => {
            let report = run_diff(&DiffParams {
                seed,
                cases,
                max_atoms,
                max_rules,
                configs: EngineConfig::all(),
            });
            let _ = writeln!(
                out,
                "{} cases, {} checks, {} disagreements",
                report.cases,
                report.checks,
                report.disagreements.len()
            );
            match report.disagreements.first() {
                None => 0,
                Some(d) => {
                    let _ = writeln!(out, "first counterexample (case seed {}, {:?}):", d.case_seed, d.config);
                    let _ = write!(out, "{}", serialize_theory(&d.theory));
                    for (name, e) in [("engine", &d.engine), ("oracle", &d.oracle)] {
                        let shown = e
                            .as_ref()
                            .map_or("panicked\n".to_string(), |e| serialize_extension(e, ExtensionFormat::Text));
                        let _ = write!(out, "-- {name}\n{shown}");
                    }
                    1
                }
            }
        }
        Command::Bench { sizes, reps, family } => {
            if sizes.len() < 2 {
                let _ = writeln!(err, "bench needs at least two sizes");
                return 1;
            }
            let report = run_bench(family, &sizes, reps);
            let _ = writeln!(out, "{}", report.to_json());
            0
        }
        Command::Fmt { file } => {
            let Some(t) = load(&file, err) else { return 1 };
            let _ = write!(out, "{}", serialize_theory(&t));
            0
        }
    }
}
