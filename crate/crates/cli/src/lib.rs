//! Command-line front end for `sumsq-core`.

pub mod commands;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::XiMethod;
use output::{write_record, Format, OutputRecord};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_VALIDATION: u8 = 4;
pub const EXIT_IO: u8 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] sumsq_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(e) if e.is_domain() => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sumsq", version, about = "Lattice sums of r_d(n), their closed form, and Neumann Casimir energies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate xi_d(lambda) by one method.
    Xi(XiArgs),
    /// Closed form against lattice sum over a (d, lambda) grid.
    Compare(CompareArgs),
    /// Neumann Casimir energy E_d per 1/L with its term table.
    Casimir {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10))]
        d: u32,
    },
    /// Table of r_d(n) for n = 0..=nmax.
    Rd {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10))]
        d: u32,
        #[arg(long)]
        nmax: u64,
    },
    /// Run the invariant suite; exits with 4 if any check fails.
    Validate,
}

#[derive(Debug, Args)]
pub struct XiArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10))]
    pub d: u32,
    #[arg(long, value_parser = parse_positive)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = XiMethod::Analytic)]
    pub method: XiMethod,
    /// Relative tolerance (default 1e-12, or 1e-10 for brute).
    #[arg(long, value_parser = parse_positive)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Inclusive dimension range `a..b`.
    #[arg(long, value_parser = parse_range, default_value = "2..5", conflicts_with = "d")]
    pub d_range: (u32, u32),
    /// A single dimension.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10))]
    pub d: Option<u32>,
    /// Comma-separated regulators.
    #[arg(long, value_parser = parse_list, default_value = "0.1,1,5,10", conflicts_with = "lambda")]
    pub lambdas: LambdaList,
    /// A single regulator.
    #[arg(long, value_parser = parse_positive)]
    pub lambda: Option<f64>,
    #[arg(long, value_parser = parse_positive)]
    pub eps: Option<f64>,
}

pub fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` must be positive and finite"))
    }
}

/// Comma-separated list of positive regulators.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaList(pub Vec<f64>);

pub fn parse_list(s: &str) -> Result<LambdaList, String> {
    s.split(',').map(parse_positive).collect::<Result<Vec<_>, _>>().map(LambdaList)
}

pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("`{s}` is not a range of the form a..b"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    if a == 0 || a > b || b > sumsq_core::analytic::MAX_DIMENSION {
        return Err(format!(
            "range `{s}` must satisfy 1 <= a <= b <= {}",
            sumsq_core::analytic::MAX_DIMENSION
        ));
    }
    Ok((a, b))
}

/// Executes a parsed command and writes its record. Returns the exit status.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    let (record, status): (OutputRecord, u8) = match cli.command {
        Command::Xi(a) => (commands::cmd_xi(a.d, a.lambda, a.method, a.eps)?, 0),
        Command::Compare(a) => {
            let ds: Vec<u32> = match a.d {
                Some(d) => vec![d],
                None => (a.d_range.0..=a.d_range.1).collect(),
            };
            let lambdas = a.lambda.map_or(a.lambdas.0, |l| vec![l]);
            (commands::cmd_compare(&ds, &lambdas, a.eps)?, 0)
        }
        Command::Casimir { d } => (commands::cmd_casimir(d)?, 0),
        Command::Rd { d, nmax } => (commands::cmd_rd(d, nmax)?, 0),
        Command::Validate => {
            let (rec, ok) = commands::cmd_validate()?;
            (rec, if ok { 0 } else { EXIT_VALIDATION })
        }
    };
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_record(&record, cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_record(&record, cli.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("2..5"), Ok((2, 5)));
        assert_eq!(parse_range(" 3 .. 3"), Ok((3, 3)));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("0..2").is_err());
        assert!(parse_range("2-5").is_err());
        assert!(parse_range("1..11").is_err());
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("0.1,1,5"), Ok(LambdaList(vec![0.1, 1.0, 5.0])));
        assert!(parse_list("0.1,,5").is_err());
        assert!(parse_list("1,-2").is_err());
        assert!(parse_positive("inf").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
