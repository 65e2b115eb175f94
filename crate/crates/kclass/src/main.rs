use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kclass::report::Verdict;
use kclass::{
    cmd_compare, cmd_fullness, cmd_invariant, cmd_scan, CliError, Mode, Report, SpecInput,
};

#[derive(Parser)]
#[command(
    name = "kclass",
    version,
    about = "K-theory invariants and classification for the graphs G[m,(n_i)]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Stable,
}

#[derive(Args)]
struct SpecArgs {
    /// Number of loops at the bottom vertex: an integer or `inf`.
    #[arg(long, required_unless_present = "input", allow_hyphen_values = true)]
    m: Option<String>,
    /// Comma-separated prefix n_1,...,n_k.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    n: String,
    /// zero | constant:<c> | doubling:<c>
    #[arg(long)]
    tail: Option<String>,
    /// JSON spec file, instead of --m/--n/--tail.
    #[arg(long, conflicts_with_all = ["m", "tail"])]
    input: Option<String>,
}

impl SpecArgs {
    fn spec(&self) -> Result<SpecInput, CliError> {
        match (&self.input, &self.m) {
            (Some(path), _) => Ok(serde_json::from_str(&fs::read_to_string(path)?)?),
            (None, Some(m)) => SpecInput::from_flags(m, &self.n, self.tail.as_deref()),
            (None, None) => Err(CliError::Input("--m is required".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Ordered K-theory and derived scalars of one spec.
    Invariant {
        #[command(flatten)]
        spec: SpecArgs,
        /// Depth of the truncated presentation reported as the oracle.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Fullness of the extension.
    Fullness {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact or stable isomorphism of two specs, e.g. `--a m=8,n=1 --b m=8,n=3`.
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Class counts for every m up to a limit and the smallest m where they differ.
    Scan {
        #[arg(long)]
        max_m: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn run(cli: &Cli, echo: &str) -> Result<(Report, Format), CliError> {
    Ok(match &cli.command {
        Command::Invariant {
            spec,
            depth,
            format,
        } => (cmd_invariant(echo, &spec.spec()?, *depth)?, *format),
        Command::Fullness { spec, format } => (cmd_fullness(echo, &spec.spec()?)?, *format),
        Command::Compare { a, b, mode, format } => {
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Stable => Mode::Stable,
            };
            (
                cmd_compare(
                    echo,
                    &SpecInput::parse_compact(a)?,
                    &SpecInput::parse_compact(b)?,
                    mode,
                )?,
                *format,
            )
        }
        Command::Scan { max_m, format } => (cmd_scan(echo, *max_m)?, *format),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli, &echo) {
        Ok((report, format)) => {
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            match report.verdict {
                Some(Verdict::Compare {
                    out_of_scope: true, ..
                }) => {
                    eprintln!("error: {}", CliError::OutOfScope);
                    CliError::OutOfScope.exit_code()
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
