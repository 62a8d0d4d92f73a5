use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "kanforge",
    version,
    about = "Exact checks for monoidal comonads, coalgebras, duals and Kan extensions"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized generation.
    #[arg(long, global = true, env = "KANFORGE_SEED", default_value_t = kanforge::corpus::DEFAULT_SEED)]
    seed: u64,
    /// Refuse exhaustive enumerations with more candidates than this.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_size: u128,
    /// Output directory for generated files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form of an integer matrix, with its certificate.
    Snf { file: PathBuf },
    /// Dual of an abelian group, graded group or chain complex.
    Dual { file: PathBuf },
    /// Tensor product of two groups, graded groups or chain complexes.
    Tensor { left: PathBuf, right: PathBuf },
    /// Grading coalgebra (carrier + projections) or DG coalgebra (components + differentials).
    CheckCoalgebra { file: PathBuf },
    /// Fusion map of a graded partner (or complex) against a chain complex.
    Fusion { vprime: PathBuf, v: PathBuf },
    /// Axioms of the comonad in a category file.
    CheckComonad { file: PathBuf },
    /// The Eilenberg–Moore category of the comonad in a category file.
    Em { file: PathBuf },
    /// Invertibility of every fusion map.
    CheckHopf { file: PathBuf },
    /// Left Kan extension of `u` along `v`.
    Lan {
        file: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Right adjoint of an object, and the residuals of tensoring with it.
    Adjoint {
        file: PathBuf,
        #[arg(long)]
        m: String,
    },
    /// Lifts every left extension between coalgebras and checks the lift.
    VerifyCreatekan { file: PathBuf },
    /// Duals of complexes versus duals of their underlying graded groups.
    CorollarySweep {
        /// Complexes to check; when empty, all free complexes within the bounds.
        files: Vec<PathBuf>,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Also check a torsion-contaminated variant of every complex.
        #[arg(long)]
        torsion: bool,
    },
    /// Writes a deterministic corpus to `--out`.
    Generate {
        kind: CorpusKind,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Points of the underlying set, for topologies.
        #[arg(long, default_value_t = 2)]
        points: u32,
        /// Number of instances, for random complexes.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct BoundArgs {
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0, 1], allow_negative_numbers = true)]
    degrees: Vec<i64>,
    #[arg(long, default_value_t = 1)]
    max_rank: usize,
    #[arg(long, default_value_t = 2)]
    max_entry: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CorpusKind {
    /// All free complexes whose components in the given degrees are nonzero.
    FreeComplexes,
    /// The free complexes, each with a ℤ/3 summand added.
    TorsionComplexes,
    /// Seeded random free complexes.
    RandomComplexes,
    /// Interior-operator comonads of all topologies on `--points` points.
    Topologies,
    /// Identity comonads on the shipped categories.
    IdentityComonads,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": format!("{e:#}") }));
            } else {
                eprintln!("error: {e:#}");
            }
            return ExitCode::from(2);
        }
    };
    print!("{}", render(&cli, &outcome));
    ExitCode::from(outcome.summary().exit_code() as u8)
}

fn render(cli: &Cli, o: &Outcome) -> String {
    let summary = o.summary();
    if cli.json {
        let v = serde_json::json!({
            "command": o.command,
            "data": o.data,
            "verdicts": o.verdicts,
            "summary": summary,
        });
        return serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    }
    let mut s = String::new();
    if let Some(d) = &o.data {
        s.push_str(&serde_json::to_string_pretty(d).expect("serializable"));
        s.push('\n');
    }
    for line in &o.notes {
        s.push_str(line);
        s.push('\n');
    }
    for v in &o.verdicts {
        s.push_str(&v.to_text());
    }
    s.push_str(&summary.to_text());
    s
}
