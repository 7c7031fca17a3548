//! The `alcbc` command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use alcbc_core::change::{affected_literals, contract, contract_fast, expand};
use alcbc_core::config::DEFAULT_MAX_ATOMS;
use alcbc_core::dnf::dnf_translate;
use alcbc_core::propositional::{parse_prop, prop_contract, prop_expand, PropModel, PropSignature};
use alcbc_core::syntax::{literal_conjunction, parse_formula};
use alcbc_core::typesys::{qm_of, Reasoner};
use alcbc_core::verify::{check_contraction, check_expansion, oracle_equiv_check, oracle_models, Evidence, Vocabulary};
use alcbc_core::{CandidateMode, Config, Error, Formula, Interpretation};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::formats::{interpretation_to_json, parse_interpretation, quasimodel_to_json, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const MAX_ATOMS_ENV: &str = "ALCBC_MAX_ATOMS";

#[derive(Debug, Parser)]
#[command(name = "alcbc", version, about = "Model contraction and expansion for ALC-formulae")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Cap on distinct atoms [default: $ALCBC_MAX_ATOMS or 12]
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_atoms: Option<u32>,
    /// Cap on non-negated subconcepts
    #[arg(long, global = true, default_value_t = 14, value_parser = clap::value_parser!(u32).range(1..=63))]
    pub max_subconcepts: u32,
    /// Largest domain the brute-force oracle enumerates
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=4))]
    pub domain_bound: u32,
    /// Model-candidate condition on concept assertions
    #[arg(long, alias = "mode", global = true, value_enum, default_value_t = Mode::Strict)]
    pub candidate_mode: Mode,
    /// Corpus seed; every subcommand is deterministic and currently ignores it
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// C(a) is in the formula type iff C is in the type of a
    Strict,
    /// only C(a) in the formula type forces C into the type of a
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Full,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Contract,
    Expand,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide satisfiability of a knowledge base
    Sat { kb: PathBuf },
    /// Model-check a knowledge base against an interpretation
    Check {
        #[arg(long)]
        model: PathBuf,
        kb: PathBuf,
    },
    /// Print the DNF translation, one disjunct per line
    Dnf { kb: PathBuf },
    /// Print quasimodels as JSON, or the quasimodel of a given interpretation
    Qm {
        #[arg(long)]
        model: Option<PathBuf>,
        kb: PathBuf,
    },
    /// Remove the literal class of a model from a knowledge base
    Contract {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Full)]
        method: Method,
        #[command(flatten)]
        output: ChangeOutput,
        kb: PathBuf,
    },
    /// Add the literal class of a model to a knowledge base
    Expand {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        output: ChangeOutput,
        kb: PathBuf,
    },
    /// Check the change postulates for one knowledge base and model
    Postulates {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Full)]
        method: Method,
        kb: PathBuf,
    },
    /// Propositional contraction and expansion
    Prop {
        #[arg(value_enum)]
        op: Op,
        formula: String,
        /// Comma-separated atom=0/1 pairs
        #[arg(long)]
        model: String,
        /// Comma-separated signature atoms
        #[arg(long)]
        sig: String,
    },
    /// Brute-force checks over small interpretations
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Args)]
struct ChangeOutput {
    /// Also print the literals of the affected cell
    #[arg(long)]
    explain: bool,
    /// Drop duplicate literals from conjunctions
    #[arg(long)]
    simplify: bool,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Search for an interpretation that tells two knowledge bases apart
    Equiv { left: PathBuf, right: PathBuf },
    /// List the models of a knowledge base up to the domain bound
    Models { kb: PathBuf },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input { path: String, source: FormatError },
    #[error("{0}")]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::ResourceLimit { .. }) => EXIT_RESOURCE,
            CliError::Input {
                source: FormatError::Model(Error::ResourceLimit { .. }),
                ..
            } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

struct Outcome {
    code: i32,
    stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout }
    }
}

impl RunConfig {
    /// Core config. The flag wins over `ALCBC_MAX_ATOMS`, which wins over the default.
    fn core_config(&self, env_max_atoms: Option<&str>) -> Result<Config, CliError> {
        let max_atoms = match (self.max_atoms, env_max_atoms) {
            (Some(n), _) => n as usize,
            (None, Some(v)) => match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => n,
                _ => {
                    return Err(CliError::Usage(format!(
                        "{MAX_ATOMS_ENV} must be a positive integer, got `{v}`"
                    )))
                }
            },
            (None, None) => DEFAULT_MAX_ATOMS,
        };
        Ok(Config {
            max_atoms,
            max_subconcepts: self.max_subconcepts as usize,
            mode: match self.candidate_mode {
                Mode::Strict => CandidateMode::Strict,
                Mode::Paper => CandidateMode::Paper,
            },
        })
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e)))
}

fn read_kb(path: &Path) -> Result<Formula, CliError> {
    let text = read(path)?;
    parse_formula(&text).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        source: FormatError::Model(e),
    })
}

fn read_model(path: &Path) -> Result<Interpretation, CliError> {
    let text = read(path)?;
    parse_interpretation(&text).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        source: e,
    })
}

fn line(out: &mut String, s: impl std::fmt::Display) {
    let _ = writeln!(out, "{s}");
}

fn finish(f: Formula, simplify: bool) -> Formula {
    if simplify {
        f.dedup_literals()
    } else {
        f
    }
}

fn explain(out: &mut String, verb: &str, f: &Formula, m: &Interpretation, applies: bool) -> Result<(), CliError> {
    if applies {
        let lits = affected_literals(f, m)?;
        line(out, format_args!("{verb} cell: {}", literal_conjunction(&lits)));
    } else {
        line(out, format_args!("{verb} cell: none (vacuous)"));
    }
    Ok(())
}

fn parse_prop_model(text: &str, sig: &PropSignature) -> Result<PropModel, CliError> {
    let mut pairs = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected atom=0 or atom=1, got `{item}`")))?;
        let value = match value.trim() {
            "0" => false,
            "1" => true,
            other => {
                return Err(CliError::Usage(format!(
                    "value of `{}` must be 0 or 1, got `{other}`",
                    name.trim()
                )))
            }
        };
        pairs.push((name.trim(), value));
    }
    Ok(PropModel::from_pairs(sig, pairs)?)
}

fn execute(cli: Cli, env_max_atoms: Option<&str>) -> Result<Outcome, CliError> {
    let cfg = cli.run.core_config(env_max_atoms)?;
    let mut out = String::new();
    match cli.command {
        Command::Sat { kb } => {
            let f = read_kb(&kb)?;
            let sat = alcbc_core::typesys::satisfiable(&f, &cfg)?;
            line(&mut out, if sat { "sat" } else { "unsat" });
        }
        Command::Check { model, kb } => {
            let (f, m) = (read_kb(&kb)?, read_model(&model)?);
            line(&mut out, m.holds(&f)?);
        }
        Command::Dnf { kb } => {
            let f = read_kb(&kb)?;
            out.push_str(&dnf_translate(&f, &cfg)?.render());
        }
        Command::Qm { model: Some(model), kb } => {
            let (f, m) = (read_kb(&kb)?, read_model(&model)?);
            line(&mut out, quasimodel_to_json(&qm_of(&f, &m)?));
        }
        Command::Qm { model: None, kb } => {
            let f = read_kb(&kb)?;
            let qms = if f == Formula::Falsum {
                Vec::new()
            } else {
                Reasoner::new(&f, &cfg)?.quasimodels()?
            };
            let body: Vec<String> = qms.iter().map(|q| quasimodel_to_json(q.candidate())).collect();
            line(&mut out, format_args!("[{}]", body.join(",\n")));
        }
        Command::Contract {
            model,
            method,
            output,
            kb,
        } => {
            let (f, m) = (read_kb(&kb)?, read_model(&model)?);
            let result = match method {
                Method::Full => contract(&f, &m, &cfg)?,
                Method::Fast => contract_fast(&f, &m)?,
            };
            line(&mut out, finish(result, output.simplify));
            if output.explain {
                explain(&mut out, "removed", &f, &m, m.holds(&f)?)?;
            }
        }
        Command::Expand { model, output, kb } => {
            let (f, m) = (read_kb(&kb)?, read_model(&model)?);
            let result = expand(&f, &m)?;
            line(&mut out, finish(result, output.simplify));
            if output.explain {
                explain(&mut out, "added", &f, &m, !m.holds(&f)?)?;
            }
        }
        Command::Postulates { op, model, method, kb } => {
            let (f, m) = (read_kb(&kb)?, read_model(&model)?);
            let report = match (op, method) {
                (Op::Contract, Method::Full) => check_contraction(&f, &m, &|f, m| contract(f, m, &cfg), &cfg)?,
                (Op::Contract, Method::Fast) => check_contraction(&f, &m, &|f, m| contract_fast(f, m), &cfg)?,
                (Op::Expand, _) => check_expansion(&f, &m, &|f, m| expand(f, m), &cfg)?,
            };
            out.push_str(&report.table());
            if !report.passed() {
                return Ok(Outcome {
                    code: EXIT_FAILURE,
                    stdout: out,
                });
            }
        }
        Command::Prop {
            op,
            formula,
            model,
            sig,
        } => {
            let sig = PropSignature::new(sig.split(',').map(str::trim).filter(|s| !s.is_empty()))?;
            let b = parse_prop(&formula, &sig)?;
            let m = parse_prop_model(&model, &sig)?;
            let result = match op {
                Op::Contract => prop_contract(&b, m, &sig)?,
                Op::Expand => prop_expand(&b, m, &sig)?,
            };
            line(&mut out, result);
        }
        Command::Oracle { command } => {
            let bound = cli.run.domain_bound as usize;
            match command {
                OracleCommand::Equiv { left, right } => {
                    let (f, g) = (read_kb(&left)?, read_kb(&right)?);
                    let check = oracle_equiv_check(&f, &g, bound, &cfg)?;
                    match check.evidence {
                        Evidence::Distinguished(w) => {
                            line(&mut out, "not equivalent");
                            line(&mut out, format_args!("counterexample: {}", interpretation_to_json(&w)));
                        }
                        Evidence::AgreeUpTo(n) => {
                            line(&mut out, "equivalent");
                            line(
                                &mut out,
                                format_args!("bounded: no counterexample with at most {n} elements"),
                            );
                        }
                    }
                }
                OracleCommand::Models { kb } => {
                    let f = read_kb(&kb)?;
                    let models = oracle_models(&f, &Vocabulary::of(&f), bound)?;
                    line(
                        &mut out,
                        format_args!("{} models with at most {bound} elements", models.len()),
                    );
                    for m in &models {
                        line(&mut out, interpretation_to_json(m));
                    }
                }
            }
        }
    }
    Ok(Outcome::ok(out))
}

/// Runs the command line on `argv` (including the program name) and returns
/// the exit code, stdout and stderr.
pub fn run<I, S>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var(MAX_ATOMS_ENV).ok();
    run_with_env(argv, env.as_deref())
}

/// [`run`] with an explicit value for `ALCBC_MAX_ATOMS`.
pub fn run_with_env<I, S>(argv: I, env_max_atoms: Option<&str>) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                (EXIT_USAGE, String::new(), text)
            } else {
                (EXIT_OK, text, String::new())
            };
        }
    };
    match execute(cli, env_max_atoms) {
        Ok(o) => (o.code, o.stdout, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
