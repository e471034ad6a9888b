use std::collections::BTreeSet;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde_json::json;

use csvqe::adapt::{run_adapt, AdaptConfig, Termination};
use csvqe::circuit::{coupling_graph, serialize_circuit};
use csvqe::degeneracy::{degeneracies_csv, parse_levels_csv, scan_degeneracies};
use csvqe::hamiltonian::{bundled_text, parse_hamiltonian, reference_state};
use csvqe::qem::{run_mitigated_energy, FitKind, MitigationConfig, MitigationReport, NoiseModel};
use csvqe::sim::exact_ground;
use csvqe::topology::{plan_tiling, subgraph_isomorphic, BiasConfig, EdgeCounting, HardwareTopology, TilingPlan};
use csvqe::{AdaptResult, LabeledHamiltonian};

use crate::output::{OutputSet, RunManifest};
use crate::{AdaptArgs, Counting, DegeneracyArgs, ExactArgs, Fit, LoopArgs, PecArgs, Source};

struct Loaded {
    name: String,
    text: String,
    h: LabeledHamiltonian,
}

fn load(source: &Source) -> Result<Loaded> {
    let (name, text) = match (&source.bundled, &source.hamiltonian) {
        (Some(id), _) => {
            let text = bundled_text(id).ok_or_else(|| anyhow!("unknown bundled Hamiltonian `{id}`"))?;
            (id.clone(), text.to_string())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            (path.display().to_string(), text)
        }
        (None, None) => bail!("pass --bundled or --hamiltonian"),
    };
    let h = parse_hamiltonian(&text).with_context(|| format!("in {name}"))?;
    Ok(Loaded { name, text, h })
}

fn finish(out: Option<&std::path::Path>, files: OutputSet, manifest: &RunManifest) -> Result<()> {
    if let Some(dir) = out {
        files.commit(dir, manifest)?;
    }
    Ok(())
}

pub fn exact(a: &ExactArgs, argv: Vec<String>) -> Result<()> {
    let l = load(&a.source)?;
    let (e, psi) = exact_ground(&l.h.hamiltonian())?;
    match l.h.bond_length {
        Some(x) => println!("{}: bond length {x:.2} Å", l.name),
        None => println!("{}", l.name),
    }
    println!("E0 = {e:.10} Ha");
    let amps: Vec<_> = psi
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > 1e-8)
        .map(|(i, z)| json!({"basis": format!("{i:0w$b}", w = l.h.n_qubits), "re": z.re, "im": z.im}))
        .collect();
    let report = json!({
        "hamiltonian": l.name,
        "bond_length": l.h.bond_length,
        "n_qubits": l.h.n_qubits,
        "energy": e,
        "amplitudes": amps,
    });
    let mut m = RunManifest::new("exact", argv, json!({"source": l.name}), None);
    m.digest(&l.name, l.text.as_bytes());
    let mut files = OutputSet::default();
    files.add("exact.json", serde_json::to_string_pretty(&report)? + "\n");
    finish(a.out.as_deref(), files, &m)
}

fn bias_config(b: f64, depth: usize, counting: Counting) -> BiasConfig {
    BiasConfig {
        b,
        max_depth: depth,
        counting: match counting {
            Counting::PerNode => EdgeCounting::PerNode,
            Counting::PerEdge => EdgeCounting::PerEdge,
        },
        ..BiasConfig::default()
    }
}

fn adapt_config(looping: &LoopArgs, bias: BiasConfig, hardware: Option<HardwareTopology>) -> AdaptConfig {
    AdaptConfig {
        delta_f: looping.df,
        delta_c: looping.dc,
        n_max: looping.nmax,
        bias,
        hardware,
        ..AdaptConfig::default()
    }
}

fn parse_reference(s: &str, n: usize) -> Result<u64> {
    if s.len() != n || !s.chars().all(|c| c == '0' || c == '1') {
        bail!("reference `{s}` must be a {n}-character bit string");
    }
    Ok(u64::from_str_radix(s, 2)?)
}

fn topology_arg(spec: &str) -> Result<Option<(HardwareTopology, Vec<u8>)>> {
    if spec == "none" {
        return Ok(None);
    }
    let bytes = match HardwareTopology::bundled_text(spec) {
        Some(t) => t.as_bytes().to_vec(),
        None => std::fs::read(spec).with_context(|| format!("cannot read topology {spec}"))?,
    };
    Ok(Some((HardwareTopology::resolve(spec)?, bytes)))
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::ScoreConverged => "score_converged",
        Termination::EnergyConverged => "energy_converged",
        Termination::MaxIterations => "max_iterations",
    }
}

fn embeds(r: &AdaptResult, topo: &HardwareTopology) -> bool {
    subgraph_isomorphic(&coupling_graph(&r.ansatz), &topo.graph).is_some()
}

pub fn adapt(a: &AdaptArgs, argv: Vec<String>) -> Result<()> {
    let l = load(&a.source)?;
    let reference = match &a.reference {
        Some(s) => parse_reference(s, l.h.n_qubits)?,
        None => reference_state(l.h.bond_length.unwrap_or(0.0)),
    };
    let topo = topology_arg(&a.topology)?;
    let bias = bias_config(a.bias.b, a.bias.depth, a.bias.counting);
    let cfg = adapt_config(&a.looping, bias, topo.as_ref().map(|t| t.0.clone()));
    let r = run_adapt(&l.h, reference, &cfg)?;
    let (fci, _) = exact_ground(&l.h.hamiltonian())?;

    let mut trace = String::new();
    for t in &r.trace {
        trace.push_str(&serde_json::to_string(t)?);
        trace.push('\n');
    }
    print!("{trace}");
    println!(
        "{}: {} operators, {} CNOTs, E = {:.10} Ha, error {:.4} mHa ({})",
        l.name,
        r.generators.len(),
        r.ansatz.cnot_count(),
        r.energy,
        (r.energy - fci) * 1e3,
        termination_name(r.termination)
    );
    let embeddable = topo.as_ref().map(|t| embeds(&r, &t.0));
    let result = json!({
        "hamiltonian": l.name,
        "bond_length": l.h.bond_length,
        "reference": format!("{reference:0w$b}", w = l.h.n_qubits),
        "reference_energy": r.reference_energy,
        "energy": r.energy,
        "exact_energy": fci,
        "error_mha": (r.energy - fci) * 1e3,
        "termination": termination_name(r.termination),
        "optimizer_converged": r.optimizer_converged,
        "cnot_count": r.ansatz.cnot_count(),
        "topology": topo.as_ref().map(|t| t.0.name.clone()),
        "embeddable": embeddable,
        "generators": r.generators.iter().map(|(p, t)| json!({"operator": p.label(), "theta": t})).collect::<Vec<_>>(),
    });
    let mut files = OutputSet::default();
    files.add("trace.jsonl", trace);
    files.add("ansatz.circuit", serialize_circuit(&r.ansatz));
    files.add("result.json", serde_json::to_string_pretty(&result)? + "\n");

    if a.compare {
        let other_topo = match &topo {
            Some(t) => t.0.clone(),
            None => HardwareTopology::falcon27(),
        };
        let (std_r, aware_r) = if topo.is_some() {
            (run_adapt(&l.h, reference, &adapt_config(&a.looping, bias, None))?, r.clone())
        } else {
            let aware = run_adapt(&l.h, reference, &adapt_config(&a.looping, bias, Some(other_topo.clone())))?;
            (r.clone(), aware)
        };
        let mut table = String::from("variant,operators,cnots,energy,error_mha,embeddable\n");
        for (name, x) in [("standard", &std_r), ("hardware_aware", &aware_r)] {
            let _ = writeln!(
                table,
                "{name},{},{},{:.10},{:.4},{}",
                x.generators.len(),
                x.ansatz.cnot_count(),
                x.energy,
                (x.energy - fci) * 1e3,
                embeds(x, &other_topo)
            );
        }
        print!("{table}");
        files.add("compare.csv", table);
    }

    let params = json!({
        "source": l.name,
        "topology": a.topology,
        "bias": a.bias.b,
        "depth": a.bias.depth,
        "counting": format!("{:?}", a.bias.counting),
        "df": a.looping.df,
        "dc": a.looping.dc,
        "nmax": a.looping.nmax,
        "reference": reference,
        "compare": a.compare,
    });
    let mut m = RunManifest::new("adapt", argv, params, Some(a.seed));
    m.digest(&l.name, l.text.as_bytes());
    if let Some((t, bytes)) = &topo {
        m.digest(&t.name, bytes);
    }
    finish(a.out.as_deref(), files, &m)
}

fn truncate_plan(plan: TilingPlan, limit: Option<usize>) -> TilingPlan {
    let Some(k) = limit else { return plan };
    if k >= plan.blocks.len() {
        return plan;
    }
    let mut unused = plan.unused;
    for b in &plan.blocks[k..] {
        unused.extend(b.nodes.iter().copied());
    }
    TilingPlan { blocks: plan.blocks[..k].to_vec(), unused }
}

struct PecPoint {
    id: String,
    bond_length: f64,
    exact: f64,
    adapt: AdaptResult,
    report: MitigationReport,
    tiled: bool,
}

pub fn pec(a: &PecArgs, argv: Vec<String>) -> Result<()> {
    if a.tiles == Some(0) {
        bail!("--tiles must be at least 1");
    }
    let mut ids = BTreeSet::new();
    for id in &a.ids {
        if bundled_text(id).is_none() {
            bail!("unknown bundled Hamiltonian `{id}`");
        }
        if !ids.insert(id.as_str()) {
            bail!("`{id}` listed twice");
        }
    }
    let (noise, noise_bytes) = match a.noise.as_str() {
        "default" => (NoiseModel::default(), None),
        "none" => (NoiseModel::noiseless(5), None),
        path => {
            let bytes = std::fs::read(path).with_context(|| format!("cannot read noise model {path}"))?;
            let text = String::from_utf8(bytes.clone()).context("noise model is not UTF-8")?;
            (NoiseModel::from_json(&text)?, Some(bytes))
        }
    };
    let (topo, topo_bytes) = topology_arg(&a.topology)?.ok_or_else(|| anyhow!("pec needs a topology"))?;
    let bias = bias_config(a.b, a.depth, Counting::PerNode);
    let mcfg = MitigationConfig {
        lambdas: a.lambdas.clone(),
        shots: a.shots,
        mem: a.mem.on(),
        dd: a.dd.on(),
        fit: match a.fit {
            Fit::Linear => FitKind::Linear,
            Fit::Quadratic => FitKind::Quadratic,
            Fit::Richardson => FitKind::Richardson,
        },
        seed: a.seed,
        ..MitigationConfig::default()
    };

    let points: Vec<PecPoint> = a
        .ids
        .par_iter()
        .map(|id| -> Result<PecPoint> {
            let h: LabeledHamiltonian = csvqe::hamiltonian::bundled(id)?;
            let x = h.bond_length.unwrap_or(0.0);
            let (exact, _) = exact_ground(&h.hamiltonian())?;
            let r = run_adapt(&h, reference_state(x), &adapt_config(&a.looping, bias, Some(topo.clone())))?;
            let plan = plan_tiling(&coupling_graph(&r.ansatz), &topo).ok().map(|p| truncate_plan(p, a.tiles));
            let point_cfg = MitigationConfig {
                seed: csvqe::sim::derive_seed(a.seed, &[id.bytes().fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64))]),
                ..mcfg.clone()
            };
            let report =
                run_mitigated_energy(&h, &r.ansatz, &r.parameters(), &noise, plan.as_ref(), &point_cfg)
                    .with_context(|| format!("mitigation for {id}"))?;
            Ok(PecPoint { id: id.clone(), bond_length: x, exact, adapt: r, tiled: plan.is_some(), report })
        })
        .collect::<Result<_>>()?;

    let mut csv = String::from(
        "bond_length,id,e_exact,e_adapt,e_raw,e_mitigated,sigma_mitigated,err_adapt,err_raw,err_mitigated,tiles,cnots\n",
    );
    let mut reports = Vec::new();
    for p in &points {
        let _ = writeln!(
            csv,
            "{:.2},{},{:.10},{:.10},{:.10},{:.10},{:.10},{:.10},{:.10},{:.10},{},{}",
            p.bond_length,
            p.id,
            p.exact,
            p.adapt.energy,
            p.report.raw.energy,
            p.report.energy,
            p.report.uncertainty,
            p.adapt.energy - p.exact,
            p.report.raw.energy - p.exact,
            p.report.energy - p.exact,
            p.report.tiles,
            p.adapt.ansatz.cnot_count()
        );
        reports.push(json!({"id": p.id, "bond_length": p.bond_length, "tiled": p.tiled, "report": p.report}));
    }
    print!("{csv}");
    let params = json!({
        "ids": a.ids,
        "noise": a.noise,
        "shots": a.shots,
        "lambdas": a.lambdas,
        "tiles": a.tiles,
        "topology": a.topology,
        "mem": a.mem.on(),
        "dd": a.dd.on(),
        "fit": format!("{:?}", a.fit),
        "bias": a.b,
        "depth": a.depth,
        "df": a.looping.df,
        "dc": a.looping.dc,
        "nmax": a.looping.nmax,
    });
    let mut m = RunManifest::new("pec", argv, params, Some(a.seed));
    for id in &a.ids {
        m.digest(id.clone(), bundled_text(id).expect("checked above").as_bytes());
    }
    m.digest(&topo.name, &topo_bytes);
    if let Some(b) = &noise_bytes {
        m.digest(&a.noise, b);
    }
    let mut files = OutputSet::default();
    files.add("pec.csv", csv);
    files.add("pec_report.json", serde_json::to_string_pretty(&reports)? + "\n");
    finish(a.out.as_deref(), files, &m)
}

pub fn degeneracy(a: &DegeneracyArgs, argv: Vec<String>) -> Result<()> {
    let text = std::fs::read_to_string(&a.csv).with_context(|| format!("cannot read {}", a.csv.display()))?;
    let sweep = parse_levels_csv(&text).with_context(|| format!("in {}", a.csv.display()))?;
    let rows = scan_degeneracies(&sweep, a.delta, a.threshold)?;
    let csv = degeneracies_csv(&rows);
    print!("{csv}");
    let mut m = RunManifest::new(
        "degeneracy",
        argv,
        json!({"csv": a.csv.display().to_string(), "delta": a.delta, "threshold": a.threshold}),
        None,
    );
    m.digest(a.csv.display().to_string(), text.as_bytes());
    let mut files = OutputSet::default();
    files.add("degeneracies.csv", csv);
    finish(a.out.as_deref(), files, &m)
}
