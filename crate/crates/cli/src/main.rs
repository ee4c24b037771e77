mod commands;

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "gpi", version, about = "Isomorphism of finite groups given by Cayley tables")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "GPI_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for independent sub-steps; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Maximum number of cohomology classes enumerated per layer.
    #[arg(long, global = true)]
    pub h2_budget: Option<u64>,
    /// Maximum size of the indecomposable closure Clo(S).
    #[arg(long, global = true)]
    pub closure_budget: Option<usize>,
    /// Maximum number of search nodes in a setwise transporter.
    #[arg(long, global = true)]
    pub transporter_budget: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a group: cyclic N | elem-ab P D | dihedral M | semidihedral M | quaternion M |
    /// dih N | symmetric K | alternating K | product G.json H.json
    Make {
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide G ~ H and report the coset of isomorphisms.
    Iso {
        g: PathBuf,
        h: PathBuf,
        #[arg(long, default_value = "o-p-radical")]
        functor: String,
        #[arg(long, default_value = "tower")]
        strategy: String,
        /// Shorthand for --strategy brute.
        #[arg(long)]
        brute: bool,
    },
    /// Automorphism group order and generators.
    Aut {
        g: PathBuf,
        #[arg(long, default_value = "o-p-radical")]
        functor: String,
        #[arg(long)]
        brute: bool,
    },
    /// Recognize cyclic, dihedral, semidihedral and generalized quaternion 2-groups.
    Recognize { g: PathBuf },
    Sylow {
        #[arg(short)]
        p: usize,
        g: PathBuf,
    },
    /// Solvable radical.
    Radical { g: PathBuf },
    /// Krull-Schmidt decomposition of a representation.
    Decompose {
        rep: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
    /// Pairs (alpha, beta) carrying one action to the other.
    Actcomp {
        rep1: PathBuf,
        rep2: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
    /// Cohomology dimensions.
    H2 {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(short, default_value_t = 2)]
        j: u32,
    },
    /// Pairs fixing theta that carry the class of f to the class of g.
    Cciso {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        f: PathBuf,
        g: PathBuf,
    },
    /// Extension data (theta, f) of G relative to an elementary abelian normal subgroup.
    Extdata {
        g: PathBuf,
        /// Comma-separated element indices.
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<usize>,
    },
    /// Census of indecomposable modules of the semi-dihedral algebra.
    EnumSd {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        max_dim: usize,
    },
    /// Pairs (J, B) up to conjugacy, J a nilpotent Jordan block.
    Wild {
        #[arg(long)]
        p: u8,
        #[arg(long)]
        d: usize,
    },
    /// Brute-force ground truth.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    Iso {
        g: PathBuf,
        h: PathBuf,
    },
    Aut {
        g: PathBuf,
    },
    Indecomposable {
        rep: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
    Cohomologous {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        f: PathBuf,
        g: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (report, code) = commands::dispatch(&cli);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // a closed pipe on stdout is not an error of the computation
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code)
}
