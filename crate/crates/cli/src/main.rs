use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use level_eulerian::families::{Family, FamilySpec};
use level_eulerian_cli::{
    cmd_analyze, cmd_cd_index, cmd_family_verify, cmd_series, cmd_shelling, Basis, InputError, Route, Source,
};

/// Level Eulerian posets from 0,1-matrices: certificates, cd-indices,
/// series and walk shellability.
#[derive(Parser)]
#[command(name = "level-eulerian", version)]
struct Cli {
    /// Emit JSON records instead of indented text.
    #[arg(long, global = true)]
    structured: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArgs {
    /// Family name, M or N.
    #[arg(long, conflicts_with = "matrix")]
    family: Option<Family>,
    /// Family parameter.
    #[arg(long)]
    r: Option<u32>,
    /// Whitespace-separated 0/1 matrix, one row per line.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

impl MatrixArgs {
    fn source(&self) -> Result<Source, InputError> {
        Source::from_flags(self.family, self.r, self.matrix.clone())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exponent, Eulerian certificate and direct rank checks.
    Analyze {
        #[command(flatten)]
        src: MatrixArgs,
        #[arg(long, default_value_t = 8)]
        pmax: u32,
    },
    /// ab- and cd-index of the interval [(i,0),(j,p)].
    CdIndex {
        #[command(flatten)]
        src: MatrixArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        p: u32,
        /// Also print the flag f-vector.
        #[arg(long)]
        flags: bool,
    },
    /// Truncated matrix of interval series.
    Series {
        #[command(flatten)]
        src: MatrixArgs,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = Route::Intervals)]
        route: Route,
        #[arg(long, value_enum, default_value_t = Basis::Cd)]
        basis: Basis,
        /// Only this entry, as `i,j`.
        #[arg(long, value_parser = parse_pair)]
        entry: Option<(usize, usize)>,
    },
    /// Block relations, series equations and crosscheck for a family.
    FamilyVerify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Bounded single-monomial shellability certificate.
    Shelling {
        #[command(flatten)]
        src: MatrixArgs,
        #[arg(long, default_value_t = 8)]
        pmax: u32,
        /// Compare against the closed form (family M only).
        #[arg(long)]
        oracle: bool,
    },
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("expected i,j, got {text:?}"))?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn run(cmd: &Command) -> Result<level_eulerian_cli::Record, InputError> {
    match cmd {
        Command::Analyze { src, pmax } => cmd_analyze(&src.source()?, *pmax),
        Command::CdIndex { src, i, j, p, flags } => cmd_cd_index(&src.source()?, *i, *j, *p, *flags),
        Command::Series {
            src,
            degree,
            route,
            basis,
            entry,
        } => cmd_series(&src.source()?, *degree, *route, *basis, *entry),
        Command::FamilyVerify { family, r, degree } => cmd_family_verify(FamilySpec::new(*family, *r)?, *degree),
        Command::Shelling { src, pmax, oracle } => cmd_shelling(&src.source()?, *pmax, *oracle),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(record) => {
            if cli.structured {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&record.to_structured()).expect("json")
                );
            } else {
                print!("{}", record.to_text());
            }
            if record.passed() {
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
