use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use mgstab::io::{emit_report, parse_problem, run_command, Command, Format, IoError, RunOptions};
use mgstab::quiver::FieldKind;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

/// Exact multi-Gieseker stability, walls and quiver semistability.
#[derive(Debug, Parser)]
#[command(name = "mgstab", version)]
struct Cli {
    /// One of: check, walls, chambers, flips, uniform, quiver-theta,
    /// quiver-check, quiver-project.
    #[arg(value_parser = parse_command)]
    command: Command,
    /// Problem file (JSON); standard input when omitted or "-".
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report destination; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Cross-check walls and chambers against direct evaluation at t = k/N.
    #[arg(long, value_name = "N")]
    grid_oracle: Option<u64>,
    /// Largest vertex dimension for exhaustive quiver searches.
    #[arg(long, value_name = "CAP", default_value_t = mgstab::quiver::DEFAULT_DIMENSION_CAP)]
    max_dim: usize,
    /// Field for quiver commands: a prime q, or Q.
    #[arg(long, value_name = "q", value_parser = parse_field)]
    field: Option<FieldKind>,
}

fn parse_command(s: &str) -> Result<Command, String> {
    Command::parse(s).ok_or_else(|| {
        let names: Vec<_> = Command::ALL.iter().map(|c| c.name()).collect();
        format!("unknown command {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_field(s: &str) -> Result<FieldKind, String> {
    if s == "Q" {
        return Ok(FieldKind::Rationals);
    }
    match s.parse::<u32>() {
        Ok(q) if q >= 2 && (2..q).take_while(|p| p * p <= q).all(|p| q % p != 0) => Ok(FieldKind::FiniteField(q)),
        _ => Err(format!("{s:?} is neither a prime nor Q")),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>, IoError> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            buf = std::fs::read(p).map_err(|e| IoError::Read(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_end(&mut buf).map_err(|e| IoError::Read(format!("cannot read standard input: {e}")))?;
        }
    }
    Ok(buf)
}

fn run(cli: &Cli) -> Result<(String, bool), IoError> {
    let input = read_input(&cli.input)?;
    let problem = parse_problem(&input)?;
    let opts = RunOptions { grid_oracle: cli.grid_oracle, max_dim: cli.max_dim, field: cli.field, ..RunOptions::default() };
    let report = run_command(cli.command, &problem, &input, &opts)?;
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let grid_ok = report.grid_oracle.as_ref().is_none_or(|g| g.agrees);
    Ok((emit_report(&report, format), grid_ok))
}

fn main() -> ExitCode {
    // usage errors are input errors (exit 1); help and version exit 0
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((text, grid_ok)) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if grid_ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: grid oracle disagrees with the reported chambers");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
