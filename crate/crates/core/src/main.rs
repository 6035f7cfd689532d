use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use geomcas::io::{self, InputError, Outcome, Property, Report, SolveTarget};

#[derive(Parser)]
#[command(
    name = "geomcas",
    version,
    about = "Exact curvature computations for parametrized metrics and homogeneous spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Highest covariant derivative of R to examine.
    #[arg(long, global = true, default_value_t = 3)]
    kmax: usize,
    /// Seed for the random-point numeric oracle in `analyze`.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Einstein,
    RicciFlat,
    ConformallyFlat,
    ClassA,
    ClassB,
    TwoSymmetric,
    ParallelNull,
    Soliton,
    AmbroseSinger,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Soliton,
    GradientSoliton,
}

#[derive(Subcommand)]
enum Command {
    /// Full curvature dossier of a geometry file.
    Analyze { file: PathBuf },
    /// Decide one property; exits 1 when it does not hold identically.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: PropertyArg,
        /// Vector section name for parallel-null and soliton.
        #[arg(long)]
        vector: Option<String>,
        /// Soliton constant, an expression in the parameters.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Structure section name for ambrose-singer.
        #[arg(long)]
        structure: Option<String>,
    },
    /// Polynomial-ansatz solver for (gradient) Ricci solitons.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Invariant geometry of a Lie algebra file.
    Hom {
        file: PathBuf,
        /// Parameter values, e.g. `a=1,b=0`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        metric_params: Vec<String>,
    },
    /// Bundled cases.
    Builtin {
        #[command(subcommand)]
        action: BuiltinAction,
    },
}

#[derive(Subcommand)]
enum BuiltinAction {
    List,
    Run {
        name: String,
        /// Diagonal of H for two-sym-n, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        h: Option<Vec<String>>,
        /// Symmetric F for two-sym-n: rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
    },
}

fn read(path: &PathBuf) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Invalid(format!("{}: {e}", path.display())))
}

fn required(v: Option<String>, flag: &str) -> Result<String, InputError> {
    v.ok_or_else(|| InputError::Invalid(format!("this property needs --{flag}")))
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    let kmax = cli.kmax;
    let report_only = |report: Report| Outcome { report, holds: true };
    match cli.command {
        Command::Analyze { file } => io::analyze(&read(&file)?, kmax, cli.seed).map(report_only),
        Command::Check {
            file,
            property,
            vector,
            lambda,
            structure,
        } => {
            let property = match property {
                PropertyArg::Einstein => Property::Einstein,
                PropertyArg::RicciFlat => Property::RicciFlat,
                PropertyArg::ConformallyFlat => Property::ConformallyFlat,
                PropertyArg::ClassA => Property::ClassA,
                PropertyArg::ClassB => Property::ClassB,
                PropertyArg::TwoSymmetric => Property::TwoSymmetric,
                PropertyArg::ParallelNull => Property::ParallelNull {
                    vector: required(vector, "vector")?,
                },
                PropertyArg::Soliton => Property::Soliton {
                    vector: required(vector, "vector")?,
                    lambda: required(lambda, "lambda")?,
                },
                PropertyArg::AmbroseSinger => Property::AmbroseSinger {
                    structure: required(structure, "structure")?,
                },
            };
            io::check(&read(&file)?, &property, kmax)
        }
        Command::Solve { file, target, degree } => {
            let (target, default) = match target {
                TargetArg::Soliton => (SolveTarget::Soliton, 2),
                TargetArg::GradientSoliton => (SolveTarget::GradientSoliton, 3),
            };
            io::solve(&read(&file)?, target, degree.unwrap_or(default))
        }
        Command::Hom { file, metric_params } => {
            let overrides = metric_params
                .iter()
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                        .ok_or_else(|| InputError::Invalid(format!("expected name=value, got `{kv}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            io::hom(&read(&file)?, &overrides, kmax).map(report_only)
        }
        Command::Builtin { action } => match action {
            BuiltinAction::List => {
                let mut report = Report::new("builtin list", "");
                for b in io::builtins() {
                    report.push(b.name, io::Item::text(b.description));
                }
                Ok(report_only(report))
            }
            BuiltinAction::Run { name, h, f } => {
                let f: Option<Vec<Vec<String>>> = f.map(|s| {
                    s.split(';')
                        .map(|row| row.split(',').map(|e| e.trim().to_string()).collect())
                        .collect()
                });
                io::run_builtin(&name, kmax, h.as_deref(), f.as_deref())
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(outcome) => {
            let out = match format {
                Format::Text => outcome.report.to_text(),
                Format::Json => outcome.report.to_json(),
            };
            print!("{out}");
            if outcome.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
