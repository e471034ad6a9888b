//! ZNE efficacy on the 2.00 Å Hamiltonian with a fixed six-operator ansatz.
//!
//! Usage: `cargo run --release --example zne_study -- [runs] [dd]`

use csvqe::adapt::{optimize_parameters, OptimizerSettings};
use csvqe::circuit::{build_ansatz, coupling_graph};
use csvqe::hamiltonian::bundled;
use csvqe::pauli::PauliString;
use csvqe::qem::{run_mitigated_energy, MitigationConfig, NoiseModel};
use csvqe::sim::exact_ground;
use csvqe::topology::{plan_tiling, HardwareTopology};

fn main() -> csvqe::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let runs: u64 = args.first().map_or(50, |s| s.parse().expect("run count"));
    let dd = args.get(1).is_some_and(|s| s == "dd");
    let h = bundled::<f64>("h9")?;
    let ham = h.hamiltonian();
    let gens: Vec<PauliString> =
        ["IIIIY", "IIYII", "YIIII", "IIIYX", "IYXII", "XIIYI"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let opt = optimize_parameters(&gens, &ham, 0, &[0.0; 6], &OptimizerSettings::default())?;
    let (fci, _) = exact_ground(&ham)?;
    let circuit = build_ansatz(5, 0, &gens)?;
    let plan = plan_tiling(&coupling_graph(&circuit), &HardwareTopology::falcon27())?;
    println!("ansatz error {:.4} mHa, {} CNOTs, {} tiles", (opt.energy - fci) * 1e3, circuit.cnot_count(), plan.blocks.len());
    let mut wins = 0;
    for seed in 0..runs {
        let cfg = MitigationConfig { seed, dd, ..MitigationConfig::default() };
        let r = run_mitigated_energy(&h, &circuit, &opt.theta, &NoiseModel::default(), Some(&plan), &cfg)?;
        let e1 = r.points[0].energy;
        let won = (r.energy - opt.energy).abs() < (e1 - opt.energy).abs();
        wins += won as u32;
        if seed < 5 {
            println!(
                "seed {seed}: raw {:+.4} λ1 {:+.4} λ2 {:+.4} λ3 {:+.4} E0 {:+.4} ± {:.4} (mHa vs noiseless)",
                (r.raw.energy - opt.energy) * 1e3,
                (e1 - opt.energy) * 1e3,
                (r.points[1].energy - opt.energy) * 1e3,
                (r.points[2].energy - opt.energy) * 1e3,
                (r.energy - opt.energy) * 1e3,
                r.uncertainty * 1e3
            );
        }
    }
    println!("E0 closer than λ=1 in {wins}/{runs}");
    Ok(())
}
