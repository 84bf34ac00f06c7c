use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qgroup_cli::{decode_config, run, Command, JobConfig, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "qgroup", version, about = "Exact computations for small quantum groups at roots of unity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Graded dims of f and L(Lambda) with Gram determinants
    Dims,
    /// Gram matrices of S (and S_Lambda) at one weight
    Gram,
    /// Verma module dims, L dims and Shapovalov determinants
    Verma,
    /// Tor dims of the Hochschild complexes (free, dual, f)
    Tor,
    /// Cohomology of the configuration arrangement complexes
    Arrcoh,
    /// Conformal block dimensions
    Blocks,
    /// Run the cross-check suites
    Verify,
}

#[derive(Args)]
struct Flags {
    /// TOML or JSON job file; flags override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Preset (A1, A2, B2, G2) or a matrix of i.j such as "2,-1;-1,2"
    #[arg(long, global = true)]
    cartan: Option<String>,
    #[arg(long, global = true)]
    l: Option<u64>,
    /// Galois parameter, coprime to l (default 1)
    #[arg(long, global = true)]
    k: Option<i64>,
    /// Coordinates <i, Lambda>, comma separated
    #[arg(long, global = true)]
    weight: Option<String>,
    /// Weights separated by ';' (in rank one, a comma list of integers)
    #[arg(long, global = true)]
    weights: Option<String>,
    /// Root lattice element, comma separated coefficients
    #[arg(long, global = true)]
    nu: Option<String>,
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    /// shriek, star or ic
    #[arg(long, global = true)]
    ext: Option<String>,
    /// Restrict arrangement complexes to the sign-isotypic part
    #[arg(long, global = true)]
    skew: bool,
    /// forms, coaction, hochschild, arrangement, comparison, blocks or all
    #[arg(long, global = true)]
    suite: Option<String>,
    /// Write the JSON here instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Dims => Command::Dims,
            Cmd::Gram => Command::Gram,
            Cmd::Verma => Command::Verma,
            Cmd::Tor => Command::Tor,
            Cmd::Arrcoh => Command::Arrcoh,
            Cmd::Blocks => Command::Blocks,
            Cmd::Verify => Command::Verify,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.flags;
    let base = match &f.config {
        Some(p) => match std::fs::read_to_string(p).map_err(|e| e.to_string()).and_then(|t| decode_config(&t).map_err(|e| e.0)) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("usage error: {}: {}", p.display(), e);
                return ExitCode::from(EXIT_USAGE as u8);
            }
        },
        None => JobConfig::default(),
    };
    let flags = JobConfig {
        cartan: f.cartan,
        l: f.l,
        k: f.k,
        weight: f.weight,
        weights: f.weights,
        nu: f.nu,
        max_depth: f.max_depth,
        ext: f.ext,
        skew: f.skew.then_some(true),
        suite: f.suite,
        out: f.out,
    };
    let cfg = base.merged(flags);
    let out = cfg.out.clone();
    let (code, text) = run(cli.cmd.into(), cfg);
    if code == EXIT_USAGE {
        eprint!("{}", text);
        eprintln!();
    } else if let Some(p) = out {
        if let Err(e) = std::fs::write(&p, &text) {
            eprintln!("usage error: cannot write {}: {}", p, e);
            return ExitCode::from(EXIT_USAGE as u8);
        }
    } else {
        print!("{}", text);
    }
    ExitCode::from(code as u8)
}
