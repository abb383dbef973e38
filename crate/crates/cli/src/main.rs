use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nilrep::basis::Algorithm;
use nilrep::Family;
use nilrep_cli::commands::{self, VerifyOptions};
use nilrep_cli::{bench, CliError, CliResult, Source, Status};

#[derive(Parser)]
#[command(name = "nilrep", version, about = "Unitriangular matrix representations of nilpotent groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Presentation file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Builtin family, e.g. `heisenberg` or `unitriangular:4`.
    #[arg(long)]
    builtin: Option<Family>,
}

impl SourceArgs {
    fn source(&self) -> Source {
        match (&self.file, self.builtin) {
            (Some(path), _) => Source::File(path.clone()),
            (None, Some(f)) => Source::Builtin(f),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Collect {
        #[command(flatten)]
        source: SourceArgs,
        /// Word such as `x2 x1^-3`.
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Action polynomials for every generator.
    Polys {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        degree_cap: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Basis of the invariant polynomial space.
    Basis {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "figure2")]
        algorithm: Algorithm,
        /// Report insert and reduction counts.
        #[arg(long)]
        counts: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Matrices of the generators.
    Rep {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "figure2")]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Relation, sampling and unitriangularity checks; exits 1 on failure.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "figure2")]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimension and insert-count table over a family.
    Bench {
        /// Family name without parameter, e.g. `unitriangular`.
        #[arg(long)]
        family: String,
        /// Inclusive size range `a..b`.
        #[arg(long)]
        sizes: String,
        /// Rows computed at once (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Omit wall times so output is reproducible.
        #[arg(long)]
        no_timing: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: BenchFormat,
    },
}

fn emit<T: Serialize>(report: &T, format: Format, text: impl FnOnce(&T) -> String) -> CliResult<String> {
    match format {
        Format::Text => Ok(text(report)),
        Format::Json => serde_json::to_string_pretty(report)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Internal(e.to_string())),
    }
}

fn run(cli: Cli) -> CliResult<(String, Status)> {
    let ok = |s| (s, Status::Ok);
    match cli.command {
        Command::Collect { source, word, format } => {
            let r = commands::collect(&source.source(), &word)?;
            emit(&r, format, |r| r.text()).map(ok)
        }
        Command::Polys {
            source,
            degree_cap,
            format,
        } => {
            let r = commands::polys(&source.source(), degree_cap)?;
            emit(&r, format, |r| r.text()).map(ok)
        }
        Command::Basis {
            source,
            algorithm,
            counts,
            format,
        } => {
            let r = commands::basis(&source.source(), algorithm, counts)?;
            emit(&r, format, |r| r.text()).map(ok)
        }
        Command::Rep {
            source,
            algorithm,
            format,
        } => {
            let r = commands::rep(&source.source(), algorithm)?;
            emit(&r, format, |r| r.text()).map(ok)
        }
        Command::Verify {
            source,
            algorithm,
            trials,
            max_len,
            seed,
            format,
        } => {
            let opts = VerifyOptions { trials, max_len, seed };
            let r = commands::verify(&source.source(), algorithm, &opts)?;
            let status = if r.passed { Status::Ok } else { Status::VerificationFailed };
            emit(&r, format, |r| r.text()).map(|s| (s, status))
        }
        Command::Bench {
            family,
            sizes,
            jobs,
            no_timing,
            format,
        } => {
            let r = bench::run(&family, bench::parse_sizes(&sizes)?, jobs, !no_timing)?;
            match format {
                BenchFormat::Text => Ok(r.text()),
                BenchFormat::Json => emit(&r, Format::Json, |_| unreachable!()),
                BenchFormat::Csv => r.csv(),
            }
            .map(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::InputError as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, status)) => {
            print!("{out}");
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("nilrep: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
