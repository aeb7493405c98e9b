mod commands;
mod wfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pachner4::field::DEFAULT_PRIME;

#[derive(Parser, Debug)]
#[command(
    name = "pachner4",
    version,
    about = "Grassmann-Berezin weights and Pachner move identities in four dimensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the 3-3 move identity.
    #[command(name = "verify-33")]
    Verify33 {
        #[command(flatten)]
        run: RunArgs,
        /// `auto`, `general:<seed>`, or a named candidate (a1234 ... b1236).
        #[arg(long, default_value = "auto")]
        w_left: String,
        /// `auto`, `general:<seed>`, or a named candidate (b1456, b2456, b3456).
        #[arg(long, default_value = "auto")]
        w_right: String,
        /// Read the left w from a file (overrides --w-left).
        #[arg(long)]
        w_left_file: Option<PathBuf>,
        /// Read the right w from a file (overrides --w-right).
        #[arg(long)]
        w_right_file: Option<PathBuf>,
    },
    /// Check the 2-4 move identity, including the -zeta_56 prefactor.
    #[command(name = "verify-24")]
    Verify24 {
        #[command(flatten)]
        run: RunArgs,
        /// `auto`, `general:<seed>`, or `a1256b1256a3456b3456`.
        #[arg(long, default_value = "auto")]
        w_right: String,
        #[arg(long)]
        w_right_file: Option<PathBuf>,
        /// Drop the -zeta_56 prefactor (the identity should then fail).
        #[arg(long)]
        no_edge_factor: bool,
    },
    /// Print the expanded weight of a 4-simplex, one term per line.
    #[command(name = "expand-weight")]
    ExpandWeight {
        /// Five distinct vertices in increasing order.
        #[arg(num_args = 5, required = true)]
        vertices: Vec<u32>,
        /// Compare against the shipped expansion of W_12345 (relabeled).
        #[arg(long)]
        check_appendix: bool,
    },
    /// Compute the invariant of a triangulated cluster (up to sign).
    Invariant {
        #[command(flatten)]
        run: RunArgs,
        /// Triangulation files: one 4-simplex (five vertices) per line.
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
        /// With two files: exit 0 iff the invariants agree up to sign.
        #[arg(long)]
        compare: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Rational,
    PrimeField,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = Mode::PrimeField)]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent random zeta assignments (ignored in symbolic mode).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Fixed vertex coordinates, `<vertex> <p>/<q>` per line.
    #[arg(long)]
    pub zeta_file: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify33 {
            run,
            w_left,
            w_right,
            w_left_file,
            w_right_file,
        } => commands::WSelector::parse(&w_left, w_left_file.as_deref()).and_then(|l| {
            let r = commands::WSelector::parse(&w_right, w_right_file.as_deref())?;
            commands::verify_33(&run, &l, &r)
        }),
        Command::Verify24 {
            run,
            w_right,
            w_right_file,
            no_edge_factor,
        } => commands::WSelector::parse(&w_right, w_right_file.as_deref())
            .and_then(|r| commands::verify_24(&run, &r, !no_edge_factor)),
        Command::ExpandWeight {
            vertices,
            check_appendix,
        } => commands::expand_weight(&vertices, check_appendix),
        Command::Invariant {
            run,
            files,
            compare,
        } => commands::invariant(&run, &files, compare),
    };
    match outcome {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
