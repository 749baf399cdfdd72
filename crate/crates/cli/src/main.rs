use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hybrid_cli::commands::{self, Family, Format, LpQuery, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "hybridqc", version, about = "Hybrid quantum-classical stabilizer code toolkit")]
struct Cli {
    /// Worker threads for parallel scans (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a code file: parameters, distance, degeneracy, orthogonality.
    Verify {
        path: String,
        /// Largest error weight to scan (defaults to the declared distance, else n).
        #[arg(long)]
        w_max: Option<usize>,
        /// Cross-check the distance with the dense Knill-Laflamme search (n <= 12).
        #[arg(long)]
        dense: bool,
    },
    /// Weight enumerators, MacWilliams residual and shadow values.
    Enumerate { path: String },
    /// Linear-programming feasibility of a parameter set.
    Lp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Quantum dimension exponent: K = q^k.
        #[arg(long)]
        k: Option<u32>,
        /// Classical message exponent: M = q^m.
        #[arg(long)]
        m: Option<u32>,
        /// Quantum dimension K.
        #[arg(long = "K")]
        big_k: Option<u64>,
        /// Number of classical messages M.
        #[arg(long = "M")]
        big_m: Option<u64>,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Add the nested condition (default on for --k/--m queries).
        #[arg(long, conflicts_with = "no_nested")]
        nested: bool,
        #[arg(long)]
        no_nested: bool,
        /// Drop the shadow inequalities.
        #[arg(long)]
        no_shadow: bool,
    },
    /// Generate a code from one of the built-in families.
    Family {
        #[command(subcommand)]
        kind: FamilyKind,
        /// Output file (stdout when absent).
        #[arg(long, global = true)]
        out: Option<String>,
    },
    /// LP feasibility over all (K, M) = (2^k, 2^m) for a range of lengths.
    Sweep {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        nested: bool,
    },
}

#[derive(Subcommand)]
enum FamilyKind {
    /// [[n, n-3 : 1, 2]] for odd n.
    Dist2 {
        #[arg(long)]
        n: usize,
    },
    /// [[2^j, 2^j - j - 2, 3]].
    Gottesman {
        #[arg(long)]
        j: usize,
    },
    /// Small distance-3 hybrid code of length 7, 9, 10 or 11.
    Seed {
        #[arg(long)]
        a: usize,
    },
    /// Gottesman blocks pasted onto a seed code.
    Paste {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let f = cli.format;
    let outcome = match cli.command {
        Command::Verify { path, w_max, dense } => commands::verify(&path, w_max, dense, f),
        Command::Enumerate { path } => commands::enumerate(&path, f),
        Command::Lp {
            n,
            d,
            k,
            m,
            big_k,
            big_m,
            q,
            nested,
            no_nested,
            no_shadow,
        } => {
            let query = LpQuery {
                n,
                d,
                q,
                k,
                m,
                big_k,
                big_m,
                nested: if nested {
                    Some(true)
                } else if no_nested {
                    Some(false)
                } else {
                    None
                },
                shadow: no_shadow.then_some(false),
            };
            commands::lp(&query, f)
        }
        Command::Family { kind, out } => {
            let kind = match kind {
                FamilyKind::Dist2 { n } => Family::Dist2 { n },
                FamilyKind::Gottesman { j } => Family::Gottesman { j },
                FamilyKind::Seed { a } => Family::Seed { a },
                FamilyKind::Paste { m, a } => Family::Paste { m, a },
            };
            commands::family(kind, out.as_deref(), f)
        }
        Command::Sweep {
            n_min,
            n_max,
            d,
            q,
            nested,
        } => commands::sweep_cmd(n_min, n_max, d, q, nested, f),
    };
    if outcome.status == EXIT_USAGE {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.status as u8)
}
