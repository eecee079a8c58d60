use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sphereq::dispatch::{dispatch, exit_code, Command, Reduction, Verb};

/// Decide, solve and verify spherical equations over finite groups.
#[derive(Parser)]
#[command(name = "sphereq", version)]
struct Cli {
    /// Seed for the randomized solvers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: VerbArg,
}

#[derive(Subcommand)]
enum VerbArg {
    /// Decide solvability of an equation.
    Decide {
        input: Option<String>,
        #[arg(long)]
        force_oracle: bool,
    },
    /// Decide and, when solvable, print verified conjugators.
    Solve {
        input: Option<String>,
        #[arg(long)]
        force_oracle: bool,
    },
    /// Check a solution against an equation.
    Verify { equation: String, solution: String },
    /// Build the equation of a hardness reduction from an instance.
    Reduce {
        #[arg(long, value_enum)]
        from: From,
        /// For 3part: target the alternating group.
        #[arg(long)]
        an: bool,
        /// For xcover: the modulus m.
        #[arg(long)]
        m: Option<u64>,
        input: Option<String>,
    },
    /// Brute-force search over the whole group.
    Oracle { input: Option<String> },
    /// Saturation length of a group (or of an equation's group).
    Saturation { input: Option<String> },
    /// Conjugacy type of a 2×2 matrix.
    Classify { input: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum From {
    #[value(name = "3part")]
    ThreePart,
    Partition,
    Xcover,
}

/// Inline JSON, `-` for stdin, or a file path. Absent means stdin.
fn read_input(arg: Option<&str>) -> std::io::Result<String> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => Ok(s.to_string()),
        Some(path) => std::fs::read_to_string(path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verb, args, force_oracle, from, alternating, m) = match &cli.verb {
        VerbArg::Decide { input, force_oracle } => (Verb::Decide, vec![input.as_deref()], *force_oracle, None, false, None),
        VerbArg::Solve { input, force_oracle } => (Verb::Solve, vec![input.as_deref()], *force_oracle, None, false, None),
        VerbArg::Verify { equation, solution } => {
            (Verb::Verify, vec![Some(equation.as_str()), Some(solution.as_str())], false, None, false, None)
        }
        VerbArg::Reduce { from, an, m, input } => {
            let r = match from {
                From::ThreePart => Reduction::ThreePartition,
                From::Partition => Reduction::Partition,
                From::Xcover => Reduction::XCover,
            };
            (Verb::Reduce, vec![input.as_deref()], false, Some(r), *an, *m)
        }
        VerbArg::Oracle { input } => (Verb::Oracle, vec![input.as_deref()], false, None, false, None),
        VerbArg::Saturation { input } => (Verb::Saturation, vec![input.as_deref()], false, None, false, None),
        VerbArg::Classify { input } => (Verb::Classify, vec![input.as_deref()], false, None, false, None),
    };
    let mut inputs = Vec::new();
    for a in args {
        match read_input(a) {
            Ok(s) => inputs.push(s),
            Err(e) => {
                eprintln!("error: cannot read input: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let cmd = Command { verb, inputs, seed: cli.seed, force_oracle, from, alternating, m };
    let report = match dispatch(&cmd) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let text = format!("{report}\n");
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
