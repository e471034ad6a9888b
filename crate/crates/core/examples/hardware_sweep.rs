//! Standard versus hardware-aware ADAPT on the bundled Hamiltonians.
//!
//! Usage: `cargo run --release --example hardware_sweep -- [b] [depth]`

use csvqe::adapt::{run_adapt, AdaptConfig};
use csvqe::circuit::coupling_graph;
use csvqe::hamiltonian::{bundled, reference_state, BUNDLED_IDS};
use csvqe::sim::exact_ground;
use csvqe::topology::{subgraph_isomorphic, BiasConfig, HardwareTopology};

fn main() -> csvqe::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let b: f64 = args.first().map_or(1.0, |s| s.parse().expect("bias exponent"));
    let depth: usize = args.get(1).map_or(2, |s| s.parse().expect("depth"));
    let falcon = HardwareTopology::falcon27();
    println!("id    mode      iters  cnots  err_mHa    embeds");
    for id in BUNDLED_IDS {
        let h = bundled::<f64>(id)?;
        let (fci, _) = exact_ground(&h.hamiltonian())?;
        let reference = reference_state(h.bond_length.unwrap_or(0.0));
        for aware in [false, true] {
            let cfg = AdaptConfig {
                hardware: aware.then(|| falcon.clone()),
                bias: BiasConfig { b, max_depth: depth, ..BiasConfig::default() },
                ..AdaptConfig::default()
            };
            let t = std::time::Instant::now();
            let r = run_adapt(&h, reference, &cfg)?;
            let embeds = subgraph_isomorphic(&coupling_graph(&r.ansatz), &falcon.graph).is_some();
            println!(
                "{id:5} {:9} {:5}  {:5}  {:8.4}   {embeds}  {:?} {:.1}s",
                if aware { "aware" } else { "standard" },
                r.generators.len(),
                r.ansatz.cnot_count(),
                (r.energy - fci) * 1e3,
                r.termination,
                t.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}
