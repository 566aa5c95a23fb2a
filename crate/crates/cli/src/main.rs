use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fano_strata_cli::config::{OutputFormat, RunConfig};
use fano_strata_cli::{commands, exit_code_for, suites};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(v: FormatArg) -> Self {
        match v {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Exact stratum tables, apolarity profiles, exhaustive plane counts, and
/// verification sweeps over small prime fields.
#[derive(Parser, Debug)]
#[command(name = "fano-strata", version, max_term_width = 100)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Seed for randomized suites (recorded in every report).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Hard cap on enumerated subspaces (flag beats the FANO_STRATA_ENUM_CAP
    /// environment variable; default 10^7).
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FormsInput {
    /// Inline tuple in the text grammar, e.g. "x0^3 + x1^3; x0*x2^2".
    forms: Option<String>,
    /// Read the tuple from a file instead.
    #[arg(long, conflicts_with = "forms")]
    file: Option<std::path::PathBuf>,
}

impl FormsInput {
    fn read(&self) -> Result<String, String> {
        match (&self.forms, &self.file) {
            (Some(inline), None) => Ok(inline.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| format!("cannot read {}: {e}", path.display())),
            _ => Err("provide a tuple inline or via --file".to_string()),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derived constants, the stratum table, and the aggregate verdicts for
    /// a parameter pack.
    Analyze {
        /// Ambient projective dimension.
        #[arg(long)]
        n: u32,
        /// Plane dimension.
        #[arg(long)]
        r: u32,
        /// Multidegree, comma separated (e.g. 2,3).
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
    },
    /// Annihilator, essential subspace, and generalized rank of a tuple.
    Apolar {
        #[command(flatten)]
        input: FormsInput,
        /// Ambient projective dimension (default: inferred from the tuple).
        #[arg(long)]
        n: Option<u32>,
        /// Work over F_q instead of the rationals.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Count (and optionally list) the projective r-planes on the zero
    /// locus of a tuple over F_q.
    FanoCount {
        #[command(flatten)]
        input: FormsInput,
        /// Ambient projective dimension (default: inferred from the tuple).
        #[arg(long)]
        n: Option<u32>,
        /// Plane dimension r.
        #[arg(long)]
        r: u32,
        /// Field size (prime).
        #[arg(long)]
        q: u64,
        /// Include the member list in the report.
        #[arg(long)]
        members: bool,
    },
    /// Run a named verification suite; exits 0 only if no case fails.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Exhaustive containment law over F_q: every tuple against every
    /// subspace, two independent routes.
    UniversalProperty {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
    },
    /// Fiber sizes and fiber sets over witness tuples and random
    /// GL-translates.
    FiberLaw {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        /// Random GL-translates per witness.
        #[arg(long, default_value_t = 50)]
        translates: u32,
    },
    /// Generalized rank of random rational quadrics vs symmetric matrix rank.
    QuadraticRank {
        #[arg(long, default_value_t = 200)]
        count: u32,
        /// Largest ambient projective dimension.
        #[arg(long, default_value_t = 5)]
        n_max: u32,
    },
    /// Exhaustive formula sweep over parameter packs.
    CombinatoricsSweep {
        #[arg(long, default_value_t = 14)]
        n_max: u32,
        #[arg(long, default_value_t = 5)]
        r_max: u32,
        #[arg(long, default_value_t = 3)]
        s_max: u32,
        #[arg(long, default_value_t = 6)]
        d_max: u32,
    },
    /// Streamed subspace totals vs both Gaussian-binomial routes.
    EnumerationCounts {
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7])]
        q_list: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        dim_max: usize,
        #[arg(long, default_value_t = 5)]
        ambient_max: usize,
    },
}

fn emit<T: serde::Serialize>(config: &RunConfig, report: &T, text: String) {
    use std::io::Write;
    let payload = match config.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => text,
    };
    // Tolerate a closed pipe (e.g. `| head`) instead of panicking.
    let _ = std::io::stdout().write_all(payload.as_bytes());
}

fn run(cli: Cli) -> u8 {
    let config = RunConfig::resolve(cli.seed, cli.cap, cli.format.into());
    let outcome: Result<u8, fano_strata_core::Error> = (|| match cli.command {
        Command::Analyze { n, r, d } => {
            let report = commands::analyze(config, n, r, d)?;
            emit(&config, &report, report.to_text());
            Ok(if report.all_applicable_hold() { 0 } else { 1 })
        }
        Command::Apolar { input, n, q } => {
            let text = input.read().map_err(usage)?;
            let report = commands::apolar(config, &text, n, q)?;
            emit(&config, &report, report.to_text());
            Ok(match &report.quadric_rank_check {
                Some(check) if !check.agrees => 1,
                _ => 0,
            })
        }
        Command::FanoCount {
            input,
            n,
            r,
            q,
            members,
        } => {
            let text = input.read().map_err(usage)?;
            let report = commands::fano_count(config, &text, n, r, q, members)?;
            emit(&config, &report, report.to_text());
            Ok(match report.pointwise_crosscheck {
                Some(false) => 1,
                _ => 0,
            })
        }
        Command::Verify { suite } => {
            let report = match suite {
                Suite::UniversalProperty { q, n, d } => {
                    suites::universal_property(config, q, n, d)?
                }
                Suite::FiberLaw {
                    q,
                    n,
                    r,
                    d,
                    translates,
                } => suites::fiber_law(config, q, n, r, d, translates)?,
                Suite::QuadraticRank { count, n_max } => {
                    suites::quadratic_rank(config, count, n_max)?
                }
                Suite::CombinatoricsSweep {
                    n_max,
                    r_max,
                    s_max,
                    d_max,
                } => suites::combinatorics_sweep(config, n_max, r_max, s_max, d_max)?,
                Suite::EnumerationCounts {
                    q_list,
                    dim_max,
                    ambient_max,
                } => suites::enumeration_counts(config, q_list, dim_max, ambient_max)?,
            };
            emit(&config, &report, report.to_text());
            Ok(if report.passed { 0 } else { 1 })
        }
    })();
    match outcome {
        Ok(code) => code,
        Err(fano_strata_core::Error::ZeroTuple) => {
            eprintln!(
                "error: the tuple is zero — the trivial case: its zero locus is everything, \
                 every r-plane lies on it, and there is nothing to enumerate"
            );
            exit_code_for(&fano_strata_core::Error::ZeroTuple)
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn usage(message: String) -> fano_strata_core::Error {
    fano_strata_core::Error::InvalidParameters(message)
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
