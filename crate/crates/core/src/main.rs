use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use morifan_census::claims::{self, DEFAULT_CLAIMS};
use morifan_census::closure::{self, parse_graph, ClosureConfig, MOVE_SET_NAMES};
use morifan_census::cone::build_census;
use morifan_census::declared::{DeclaredCensus, DEFAULT_CONFIG};
use morifan_census::report::{self, Format};
use morifan_census::triple::Triple;
use morifan_census::verify::run_full_verification;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "morifan", version, about = "Mori fan model and cone census with claims audit")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Table => Format::Table,
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the model and maximal-cone census.
    Census {
        /// Declared-counts config (defaults to the shipped one).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run every check and claim; exit 1 on any unexpected verdict.
    Verify {
        #[arg(long)]
        claims: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the orbit, stabilizer order and canonical form of a triple.
    Orbits {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
    },
    /// Close a graph under a built-in move set and print the class count.
    Closure {
        #[arg(long)]
        graph: PathBuf,
        /// One of: triple-group, shift, involution, none.
        #[arg(long)]
        moves: String,
        /// Expand each frontier on a thread pool.
        #[arg(long)]
        parallel: bool,
        #[arg(long, default_value_t = closure::DEFAULT_MAX_NODES)]
        max_nodes: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_classes: usize,
    },
    /// Evaluate a claims file and print the verdict table.
    Audit {
        #[arg(long)]
        claims: Option<PathBuf>,
    },
}

fn read_or(path: Option<&Path>, default: &str) -> Result<String, String> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(default.to_string()),
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn run(cli: Cli) -> ExitCode {
    let format: Format = cli.format.into();
    match cli.command {
        Command::Census { config } => {
            let text = match read_or(config.as_deref(), DEFAULT_CONFIG) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            let declared = match DeclaredCensus::parse(&text) {
                Ok(d) => d,
                Err(e) => return input_error(e),
            };
            match build_census(&declared) {
                Ok(r) => {
                    print!("{}", report::render_census(&r, format));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("census failed: {e}");
                    ExitCode::from(EXIT_VERIFY_FAILED)
                }
            }
        }
        Command::Verify { claims, config } => {
            let claims_text = read_or(claims.as_deref(), DEFAULT_CLAIMS);
            let config_text = read_or(config.as_deref(), DEFAULT_CONFIG);
            let (claims_text, config_text) = match (claims_text, config_text) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return input_error(e),
            };
            match run_full_verification(&claims_text, &config_text) {
                Ok(r) => {
                    print!("{}", report::render_verification(&r, format));
                    if r.exit_status == 0 {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VERIFY_FAILED)
                    }
                }
                Err(e) if e.is_input_error() => input_error(e),
                Err(e) => {
                    eprintln!("verification failed: {e}");
                    ExitCode::from(EXIT_VERIFY_FAILED)
                }
            }
        }
        Command::Orbits { a, b, c } => match Triple::new(a, b, c) {
            Ok(t) => {
                print!("{}", report::render_orbit(t, &t.orbit(), format));
                ExitCode::SUCCESS
            }
            Err(e) => input_error(e),
        },
        Command::Closure {
            graph,
            moves,
            parallel,
            max_nodes,
            max_classes,
        } => {
            let Some(move_ops) = closure::move_set(&moves) else {
                return input_error(format!(
                    "unknown move set `{moves}` (expected one of {})",
                    MOVE_SET_NAMES.join(", ")
                ));
            };
            let text = match fs::read_to_string(&graph) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", graph.display())),
            };
            let seed = match parse_graph(&text) {
                Ok(g) => g,
                Err(e) => return input_error(format!("{}: {e}", graph.display())),
            };
            let config = ClosureConfig {
                max_nodes,
                max_classes,
                ..ClosureConfig::default()
            };
            let result = if parallel {
                closure::closure_parallel(&seed, &move_ops, &config)
            } else {
                closure::closure(&seed, &move_ops, &config)
            };
            match result {
                Ok(r) => {
                    print!("{}", report::render_closure(&moves, r.summary(), format));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("closure failed: {e}");
                    ExitCode::from(EXIT_VERIFY_FAILED)
                }
            }
        }
        Command::Audit { claims: path } => {
            let text = match read_or(path.as_deref(), DEFAULT_CLAIMS) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            let parsed = match claims::parse_claims(&text) {
                Ok(c) => c,
                Err(e) => return input_error(e),
            };
            match claims::audit(&parsed) {
                Ok(r) => {
                    print!("{}", report::render_audit(&r, format));
                    ExitCode::from(r.exit_status as u8)
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(EXIT_VERIFY_FAILED)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    run(cli)
}
