use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dichroma::hunt::{hunt, HuntConfig, HuntMode, InstanceClass};
use dichroma::verify::{claim_check, verify_instance, Bound, DEFAULT_EXACT_CAP};
use dichroma::{emit_dgf, parse_dgf, thread_pool, HarnessError};
use dichroma_core::asr::{find_asr_with, AsrInstance, AsrStrategy};
use dichroma_core::bounds::Rational;
use dichroma_core::constants::MainConstants;
use dichroma_core::dense::dense_reduce_theorem;
use dichroma_core::generators::{
    complete_digraph, directed_cycle, obstruction, random_digraph, random_tournament, transitive_tournament,
};
use dichroma_core::params::{biclique_number, degree_profile, density_report, directed_clique_number};
use dichroma_core::solver::{dichromatic_number_with_witness, k_dicolourable, list_dicolourable};
use dichroma_core::sparse::{monte_carlo, sparse_dicolour_with, SparseConfig};
use dichroma_core::transversal::biclique_transversal;
use dichroma_core::{Digraph, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dichroma", version, about = "Dicolouring algorithms and bound verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree parameters, clique numbers, sparsity and the main constants.
    Params {
        file: PathBuf,
        /// Value for Δ1 (defaults to Δ2).
        #[arg(long)]
        delta1: Option<u64>,
    },
    /// Exact dichromatic number, k-dicolouring or list dicolouring.
    Dicolor {
        file: PathBuf,
        #[arg(long, conflicts_with = "list")]
        k: Option<usize>,
        /// JSON array with one colour list per vertex.
        #[arg(long)]
        list: Option<PathBuf>,
    },
    /// Acyclic set meeting every maximum biclique, or an obstruction.
    Transversal {
        file: PathBuf,
        /// Degree bound Δ (defaults to Δmax).
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Acyclic system of representatives of a partition into independent sets.
    Asr {
        file: PathBuf,
        /// JSON array of parts.
        #[arg(long)]
        parts: PathBuf,
        #[arg(long)]
        k: usize,
        /// Vertex the representatives must contain.
        #[arg(long)]
        anchor: Option<usize>,
        #[arg(long, value_enum, default_value = "minimize")]
        strategy: StrategyArg,
    },
    /// Randomised colouring of a B-sparse digraph.
    Sparse {
        file: PathBuf,
        #[arg(long = "B")]
        b: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        max_tries: usize,
        /// Also estimate the colour counts at this vertex.
        #[arg(long)]
        probe: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Colouring around a dense vertex.
    Dense {
        file: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        a: Rational,
        #[arg(long, value_parser = parse_rational)]
        eps: Rational,
    },
    /// Check the upper bounds against the exact dichromatic number.
    Check {
        file: PathBuf,
        /// Exit with status 1 only when this bound fails (default: any).
        #[arg(long, value_enum)]
        bound: Option<Bound>,
        #[arg(long, value_parser = parse_rational, default_value = "1/2")]
        eps: Rational,
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        cap: usize,
    },
    /// Search a stream of small instances for a bound violation.
    Hunt {
        #[arg(long, value_enum, default_value = "random")]
        mode: HuntMode,
        #[arg(long, value_enum, default_value = "digraph")]
        class: InstanceClass,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "reed")]
        bound: Bound,
        #[arg(long, value_parser = parse_rational, default_value = "1/2")]
        eps: Rational,
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        cap: usize,
        /// Write every record as one JSON line to this file.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Write a digraph from a standard family in DGF.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    Complete { n: usize },
    Cycle { n: usize },
    Tournament {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        transitive: bool,
    },
    Random {
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        p_digon: f64,
        #[arg(long, default_value_t = 0.3)]
        p_simple: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Obstruction { n: usize, p: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Minimize,
    Exchange,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("expected P/Q: {e}"))
}

fn read_text(path: &Path) -> Result<String, HarnessError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    Ok(fs::read_to_string(path)?)
}

fn read_digraph(path: &Path) -> Result<Digraph, HarnessError> {
    Ok(parse_dgf(&read_text(path)?)?)
}

fn read_lists(path: &Path) -> Result<Vec<Vec<usize>>, HarnessError> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

/// A JSON result and whether it reports a violated bound.
struct Outcome {
    value: Value,
    violation: bool,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, violation: false }
    }
}

fn run(cmd: Command) -> Result<Outcome, HarnessError> {
    Ok(match cmd {
        Command::Params { file, delta1 } => {
            let d = read_digraph(&file)?;
            let profile = degree_profile(&d);
            let constants = MainConstants::new(dichroma_core::constants::default_a(), delta1)?;
            json!({
                "n": d.n(),
                "arcs": d.arc_count(),
                "delta_max": profile.delta_max,
                "delta_min": profile.delta_min,
                "delta_plus": profile.delta_plus,
                "delta_tilde_sq": profile.delta_tilde_sq,
                "omega_bi": biclique_number(&d),
                "omega_dir": directed_clique_number(&d),
                "sparsity": density_report(&d).sparsity(),
                "oriented": d.is_oriented(),
                "symmetric": d.is_symmetric(),
                "claims": claim_check(&d, &constants),
                "constants": constants.report(),
            })
            .into()
        }
        Command::Dicolor { file, k, list } => {
            let d = read_digraph(&file)?;
            if let Some(path) = list {
                let c = list_dicolourable(&d, &read_lists(&path)?)?;
                json!({ "colourable": c.is_some(), "colouring": c }).into()
            } else if let Some(k) = k {
                let c = k_dicolourable(&d, k);
                json!({ "k": k, "colourable": c.is_some(), "colouring": c }).into()
            } else {
                let (chi, c) = dichromatic_number_with_witness(&d);
                json!({ "chi": chi, "colouring": c }).into()
            }
        }
        Command::Transversal { file, delta } => {
            let d = read_digraph(&file)?;
            let delta = delta.unwrap_or_else(|| degree_profile(&d).delta_max);
            serde_json::to_value(biclique_transversal(&d, delta)?)?.into()
        }
        Command::Asr { file, parts, k, anchor, strategy } => {
            let d = read_digraph(&file)?;
            let inst = AsrInstance::new(d, read_lists(&parts)?, k)?;
            let strategy = match strategy {
                StrategyArg::Minimize => AsrStrategy::Minimize,
                StrategyArg::Exchange => AsrStrategy::Exchange,
            };
            match find_asr_with(&inst, anchor, strategy) {
                Ok(out) => json!({ "found": true, "outcome": out }).into(),
                Err(Error::NoAsr) => {
                    json!({ "found": false, "precondition_holds": inst.precondition_holds() }).into()
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Sparse { file, b, seed, max_tries, probe, trials } => {
            let d = read_digraph(&file)?;
            let out = sparse_dicolour_with(&d, b, SparseConfig { max_tries, seed })?;
            let estimate = match probe {
                Some(v) => Some(thread_pool().install(|| monte_carlo(&d, v, trials, seed))?),
                None => None,
            };
            json!({ "found": out.is_some(), "outcome": out, "monte_carlo": estimate }).into()
        }
        Command::Dense { file, a, eps } => {
            let d = read_digraph(&file)?;
            serde_json::to_value(dense_reduce_theorem(&d, a, eps)?)?.into()
        }
        Command::Check { file, bound, eps, cap } => {
            let d = read_digraph(&file)?;
            let r = verify_instance(&d, eps, cap)?;
            let violation = match bound {
                Some(b) => r.violates(b),
                None => !r.holds.all(),
            };
            Outcome { value: serde_json::to_value(&r)?, violation }
        }
        Command::Hunt { mode, class, n_min, n_max, count, seed, bound, eps, cap, records } => {
            let cfg = HuntConfig { mode, class, n_min, n_max, count, seed, bound, eps, exact_cap: cap };
            let report = thread_pool().install(|| hunt(&cfg))?;
            if let Some(path) = records {
                let mut f = io::BufWriter::new(fs::File::create(path)?);
                for r in &report.records {
                    serde_json::to_writer(&mut f, r)?;
                    writeln!(f)?;
                }
                f.flush()?;
            }
            let mut value = serde_json::to_value(&report)?;
            value["violating_records"] = serde_json::to_value(report.violating_records())?;
            Outcome { value, violation: !report.violations.is_empty() }
        }
        Command::Gen { family, output } => {
            let (name, d) = match family {
                Family::Complete { n } => ("complete", complete_digraph(n)),
                Family::Cycle { n } => ("cycle", directed_cycle(n)),
                Family::Tournament { n, transitive: true, .. } => ("tournament", transitive_tournament(n)),
                Family::Tournament { n, seed, .. } => ("tournament", random_tournament(n, seed)),
                Family::Random { n, p_digon, p_simple, seed } => {
                    ("random", random_digraph(n, p_digon, p_simple, seed)?)
                }
                Family::Obstruction { n, p } => ("obstruction", obstruction(n, p)?),
            };
            let text = emit_dgf(&d);
            match output {
                Some(path) => {
                    fs::write(&path, &text)?;
                    json!({ "family": name, "n": d.n(), "arcs": d.arc_count(), "path": path }).into()
                }
                None => {
                    let _ = io::stdout().write_all(text.as_bytes());
                    return Ok(Outcome { value: Value::Null, violation: false });
                }
            }
        }
    })
}

/// Pretty JSON on standard output; a closed pipe is not an error.
fn emit(v: &Value) {
    let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(v).expect("JSON values serialise"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if !out.value.is_null() {
                emit(&out.value);
            }
            if out.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let mut err = json!({ "error": e.to_string() });
            if let HarnessError::Parse(p) = &e {
                err["line"] = p.line.into();
                err["column"] = p.column.into();
            }
            emit(&err);
            eprintln!("dichroma: {e}");
            ExitCode::from(2)
        }
    }
}
