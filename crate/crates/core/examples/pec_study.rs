//! Median mitigated and raw PEC errors over seeds, hardware-aware ansätze.
//!
//! Usage: `cargo run --release --example pec_study -- [seeds] [bias]`

use csvqe::adapt::{run_adapt, AdaptConfig};
use csvqe::circuit::coupling_graph;
use csvqe::hamiltonian::{bundled, reference_state, BUNDLED_IDS};
use csvqe::qem::{run_mitigated_energy, MitigationConfig, NoiseModel};
use csvqe::sim::exact_ground;
use csvqe::topology::{plan_tiling, BiasConfig, HardwareTopology};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) }
}

fn main() -> csvqe::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let seeds: u64 = args.first().map_or(50, |s| s.parse().expect("seed count"));
    let b: f64 = args.get(1).map_or(20.0, |s| s.parse().expect("bias"));
    let falcon = HardwareTopology::falcon27();
    let mut wins = 0;
    for id in BUNDLED_IDS {
        let h = bundled::<f64>(id)?;
        let (fci, _) = exact_ground(&h.hamiltonian())?;
        let cfg = AdaptConfig { hardware: Some(falcon.clone()), bias: BiasConfig { b, ..BiasConfig::default() }, ..AdaptConfig::default() };
        let r = run_adapt(&h, reference_state(h.bond_length.unwrap_or(0.0)), &cfg)?;
        let plan = plan_tiling(&coupling_graph(&r.ansatz), &falcon).ok();
        let t = std::time::Instant::now();
        let (mut raw, mut mit) = (Vec::new(), Vec::new());
        for seed in 0..seeds {
            let m = MitigationConfig { seed, ..MitigationConfig::default() };
            let rep = run_mitigated_energy(&h, &r.ansatz, &r.parameters(), &NoiseModel::default(), plan.as_ref(), &m)?;
            raw.push((rep.raw.energy - fci).abs());
            mit.push((rep.energy - fci).abs());
        }
        let (mr, mm) = (median(raw), median(mit));
        wins += (mm <= mr) as u32;
        println!("{id}: cnots {:3} tiles {} raw {:8.3} mit {:8.3} mHa  {:.1}s", r.ansatz.cnot_count(), plan.map_or(0, |p| p.blocks.len()), mr * 1e3, mm * 1e3, t.elapsed().as_secs_f64());
    }
    println!("mitigated <= raw at {wins}/10");
    Ok(())
}
