use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use troplift::cli::{self, Command, Options};
use troplift::error::Error;

#[derive(Parser)]
#[command(name = "troplift", about = "Initial ideals, tropical membership and series lifting over Q((t))")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Input file (defaults to stdin)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Weight vector, e.g. "-1,-3/2" (overrides the omega: section)
    #[arg(long, global = true, allow_hyphen_values = true)]
    omega: Option<String>,
    /// Truncation order for lift (overrides the order: section)
    #[arg(long, global = true)]
    order: Option<u32>,
    /// RNG seed (overrides the seed: section)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Solution branch index for lift
    #[arg(long, global = true, default_value_t = 0)]
    branch: usize,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// t-initial ideal of the input at omega
    Tin,
    /// membership of omega in the tropical variety
    Trop,
    /// dimension of the input ideal over Q(t)
    Dim,
    /// truncated series solution with valuation omega
    Lift,
    /// cut down to a zero-dimensional ideal still tropically containing omega
    Rdz,
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let text = match &args.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
        },
        None => {
            use std::io::Read;
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: cannot read stdin: {}", e);
                return ExitCode::from(2);
            }
            buf
        }
    };
    let cmd = match args.cmd {
        Cmd::Tin => Command::Tin,
        Cmd::Trop => Command::Trop,
        Cmd::Dim => Command::Dim,
        Cmd::Lift => Command::Lift,
        Cmd::Rdz => Command::Rdz,
    };
    let result = (|| {
        let input = cli::parse_input(&text)?;
        let omega = match &args.omega {
            Some(s) => Some(cli::parse_omega(s)?),
            None => None,
        };
        let opts = Options {
            omega,
            order: args.order,
            seed: args.seed,
            branch: args.branch,
            json: args.json,
        };
        cli::run(cmd, &input, &opts)
    })();
    match result {
        Ok(out) => {
            println!("{}", out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
