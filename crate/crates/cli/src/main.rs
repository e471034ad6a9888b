//! `csvqe`: exact energies, adaptive ansatz runs, mitigated potential
//! energy curves and degeneracy scans on the bundled N₂ Hamiltonians.

mod commands;
mod output;

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use csvqe::hamiltonian::{bundled_text, BUNDLED_IDS};
use csvqe::topology::HardwareTopology;

/// Worker-thread override for every parallel section.
pub const THREADS_ENV: &str = "CSVQE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "csvqe", about = "Adaptive VQE workbench for reduced N2 Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ground-state energy by dense diagonalization.
    Exact(ExactArgs),
    /// Grow an ansatz with (optionally hardware-aware) ADAPT.
    Adapt(AdaptArgs),
    /// Noisy, mitigated potential energy curve over the bundled geometries.
    Pec(PecArgs),
    /// Flag near-degenerate adjacent levels in a CSV sweep.
    Degeneracy(DegeneracyArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Bundled Hamiltonian id (h0 … h9).
    #[arg(long)]
    pub bundled: Option<String>,
    /// Path to a Hamiltonian file.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ExactArgs {
    #[command(flatten)]
    pub source: Source,
    /// Directory for exact.json and manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Counting {
    PerNode,
    PerEdge,
}

#[derive(Args, Debug, Clone)]
pub struct BiasArgs {
    /// Bias exponent b.
    #[arg(long = "bias", default_value_t = 1.0)]
    pub b: f64,
    /// Maximum node-deletion depth D.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// How removed edges are weighted.
    #[arg(long, value_enum, default_value_t = Counting::PerNode)]
    pub counting: Counting,
}

#[derive(Args, Debug, Clone)]
pub struct LoopArgs {
    /// Score tolerance.
    #[arg(long, default_value_t = 1e-3)]
    pub df: f64,
    /// Energy convergence threshold (Hartree).
    #[arg(long, default_value_t = 1e-6)]
    pub dc: f64,
    /// Maximum number of operators.
    #[arg(long, default_value_t = 20)]
    pub nmax: usize,
}

#[derive(Args, Debug, Clone)]
pub struct AdaptArgs {
    #[command(flatten)]
    pub source: Source,
    /// `none`, `falcon27`, `eagle127` or a topology file.
    #[arg(long, default_value = "none")]
    pub topology: String,
    #[command(flatten)]
    pub bias: BiasArgs,
    #[command(flatten)]
    pub looping: LoopArgs,
    /// Reference basis state as a bit string (qubit 0 rightmost);
    /// defaults to the one for the bond length.
    #[arg(long)]
    pub reference: Option<String>,
    /// Recorded in the manifest; the loop itself is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also run the other scoring variant and print both.
    #[arg(long)]
    pub compare: bool,
    /// Directory for trace.jsonl, ansatz.circuit, result.json, manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

impl Switch {
    pub fn on(self) -> bool {
        self == Switch::On
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fit {
    Linear,
    Quadratic,
    Richardson,
}

#[derive(Args, Debug, Clone)]
pub struct PecArgs {
    /// Comma-separated bundled ids.
    #[arg(long, value_delimiter = ',', default_values_t = BUNDLED_IDS.map(String::from))]
    pub ids: Vec<String>,
    /// `default`, `none` or a noise-model JSON file.
    #[arg(long, default_value = "default")]
    pub noise: String,
    /// Shots per clique per tile.
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1u32, 2, 3])]
    pub lambdas: Vec<u32>,
    /// Upper limit on replicas; defaults to every block the planner finds.
    #[arg(long)]
    pub tiles: Option<usize>,
    #[arg(long, default_value = "falcon27")]
    pub topology: String,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub mem: Switch,
    #[arg(long, value_enum, default_value_t = Switch::Off)]
    pub dd: Switch,
    #[arg(long, value_enum, default_value_t = Fit::Linear)]
    pub fit: Fit,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Bias exponent for the hardware-aware ansatz.
    #[arg(long = "bias", default_value_t = 20.0)]
    pub b: f64,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    #[command(flatten)]
    pub looping: LoopArgs,
    /// Directory for pec.csv, pec_report.json, manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct DegeneracyArgs {
    /// Input CSV: `bond_length, e0, e1, ...` per line.
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    /// Directory for degeneracies.csv and manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Output directory, replacing the recorded one.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn version_text() -> String {
    let mut s = env!("CARGO_PKG_VERSION").to_string();
    for id in BUNDLED_IDS {
        let text = bundled_text(id).expect("bundled id");
        s.push_str(&format!("\n{id}.ham sha256:{}", output::sha256_hex(text.as_bytes())));
    }
    for name in ["falcon27", "eagle127"] {
        let text = HardwareTopology::bundled_text(name).expect("bundled topology");
        s.push_str(&format!("\n{name}.json sha256:{}", output::sha256_hex(text.as_bytes())));
    }
    s
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = match v.trim().parse() {
            Ok(n) if n > 0 => n,
            _ => bail!("{THREADS_ENV} must be a positive integer, got `{v}`"),
        };
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(argv: Vec<String>) -> Result<()> {
    let version: &'static str = Box::leak(version_text().into_boxed_str());
    let matches = Cli::command().version(version).try_get_matches_from(
        std::iter::once("csvqe".to_string()).chain(argv.iter().cloned()),
    );
    let matches = match matches {
        Ok(m) => m,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => bail!("{}", e.to_string().lines().next().unwrap_or("bad arguments").trim_start_matches("error: ")),
    };
    let cli = Cli::from_arg_matches(&matches)?;
    match cli.command {
        Command::Exact(a) => commands::exact(&a, argv),
        Command::Adapt(a) => commands::adapt(&a, argv),
        Command::Pec(a) => commands::pec(&a, argv),
        Command::Degeneracy(a) => commands::degeneracy(&a, argv),
        Command::Replay(a) => {
            let text = std::fs::read_to_string(&a.manifest)?;
            let manifest: output::RunManifest = serde_json::from_str(&text)?;
            let mut args = Vec::new();
            let mut it = manifest.argv.into_iter();
            while let Some(x) = it.next() {
                if x == "--out" {
                    it.next();
                } else if !x.starts_with("--out=") {
                    args.push(x);
                }
            }
            if let Some(out) = a.out {
                args.push("--out".into());
                args.push(out.display().to_string());
            }
            if args.first().is_some_and(|c| c == "replay") {
                bail!("manifest records a replay");
            }
            run(args)
        }
    }
}

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let result = init_threads().and_then(|()| run(argv));
    if let Err(e) = result {
        let msg = format!("{e:#}").replace('\n', " ");
        eprintln!("error: {msg}");
        std::process::exit(1);
    }
}
