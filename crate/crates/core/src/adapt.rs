//! Adaptive ansatz growth: pool scoring, operator selection and
//! re-optimization of all parameters after every append.

use std::sync::Mutex;

use argmin::core::{CostFunction, Executor, Gradient, State};
use argmin::solver::linesearch::MoreThuenteLineSearch;
use argmin::solver::quasinewton::BFGS;
use rayon::prelude::*;

use serde::{Deserialize, Serialize};

use crate::circuit::{build_ansatz, Circuit};
use crate::error::{Error, Result};
use crate::hamiltonian::LabeledHamiltonian;
use crate::pauli::{Letter, PauliString, PauliSum};
use crate::scalar::{cx, Cx, Real};
use crate::sim::{kernels, StateVector};
use crate::topology::{score, BiasConfig, HardwareContext, HardwareTopology};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoolProvenance {
    SinglesDoubles,
    Custom,
}

/// Candidate generators, each a Pauli word with an odd number of `Y`s.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorPool {
    pub operators: Vec<PauliString>,
    pub provenance: PoolProvenance,
}

impl OperatorPool {
    pub fn custom(operators: Vec<PauliString>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let n = operators.first().map(PauliString::n_qubits);
        for p in &operators {
            if Some(p.n_qubits()) != n {
                return Err(Error::SizeMismatch { left: n.unwrap_or(0), right: p.n_qubits() });
            }
            if p.y_count() % 2 != 1 {
                return Err(Error::InvalidPauli(format!("{p} has an even number of Y letters")));
            }
            if !seen.insert(p.phase_free()) {
                return Err(Error::InvalidPauli(format!("{p} appears twice in the pool")));
            }
        }
        Ok(Self { operators, provenance: PoolProvenance::Custom })
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }
}

/// Pauli words arising from single and double excitation generators.
///
/// Weight one: `Y`. Weight two: `XY`, `YX`, `YZ`, `ZY`. Weights three and
/// four: every word over `{X, Y}` with an odd number of `Y`s. Ordered by
/// weight, then qubit subset, then letters (highest qubit first).
pub fn build_pool(n_qubits: usize) -> Result<OperatorPool> {
    if n_qubits == 0 {
        return Err(Error::InvalidConfig("pool needs at least one qubit".into()));
    }
    let mut ops = Vec::new();
    for q in 0..n_qubits {
        ops.push(PauliString::from_sparse(n_qubits, &[(q, Letter::Y)])?);
    }
    use Letter::{X, Y, Z};
    let pairs = [(X, Y), (Y, X), (Y, Z), (Z, Y)];
    for lo in 0..n_qubits {
        for hi in lo + 1..n_qubits {
            for &(a, b) in &pairs {
                ops.push(PauliString::from_sparse(n_qubits, &[(hi, a), (lo, b)])?);
            }
        }
    }
    for k in 3..=4.min(n_qubits) {
        for subset in subsets(n_qubits, k) {
            // Letters for the subset, highest qubit first; bit set means Y.
            for mask in 0..1u32 << k {
                if mask.count_ones() % 2 == 0 {
                    continue;
                }
                let letters: Vec<(usize, Letter)> = subset
                    .iter()
                    .rev()
                    .enumerate()
                    .map(|(i, &q)| (q, if mask >> (k - 1 - i) & 1 == 1 { Y } else { X }))
                    .collect();
                ops.push(PauliString::from_sparse(n_qubits, &letters)?);
            }
        }
    }
    Ok(OperatorPool { operators: ops, provenance: PoolProvenance::SinglesDoubles })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&q| mask >> q & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

/// Inner-loop optimizer settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    pub gradient_tolerance: f64,
    pub max_iterations: u64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self { gradient_tolerance: 1e-7, max_iterations: 500 }
    }
}

#[derive(Clone, Debug)]
pub struct AdaptConfig {
    pub delta_f: f64,
    pub delta_c: f64,
    pub n_max: usize,
    pub bias: BiasConfig,
    pub hardware: Option<HardwareTopology>,
    pub optimizer: OptimizerSettings,
    /// Defaults to [`build_pool`] for the register size.
    pub pool: Option<OperatorPool>,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        Self {
            delta_f: 1e-3,
            delta_c: 1e-6,
            n_max: 20,
            bias: BiasConfig::default(),
            hardware: None,
            optimizer: OptimizerSettings::default(),
            pool: None,
        }
    }
}

impl AdaptConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_f > 0.0) || !(self.delta_c > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        self.bias.validate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    ScoreConverged,
    EnergyConverged,
    MaxIterations,
}

/// One appended operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub operator: String,
    pub score: f64,
    pub energy: f64,
    pub delta_f: f64,
    pub delta_c: f64,
    pub cnot_count: usize,
}

#[derive(Clone, Debug)]
pub struct AdaptResult<T> {
    pub reference: u64,
    pub ansatz: Circuit,
    pub generators: Vec<(PauliString, T)>,
    pub reference_energy: T,
    pub energy: T,
    pub trace: Vec<TraceEntry>,
    pub termination: Termination,
    /// False if some re-optimization hit its iteration cap.
    pub optimizer_converged: bool,
}

impl<T: Real> AdaptResult<T> {
    pub fn parameters(&self) -> Vec<T> {
        self.generators.iter().map(|(_, t)| *t).collect()
    }
}

/// `∏_k e^{iθ_k P_k}|reference⟩`, applied in generator order.
pub fn ansatz_state<T: Real>(n_qubits: usize, reference: u64, generators: &[PauliString], theta: &[T]) -> Result<StateVector<T>> {
    if generators.len() != theta.len() {
        return Err(Error::SizeMismatch { left: generators.len(), right: theta.len() });
    }
    let mut psi = StateVector::basis(n_qubits, reference as usize)?;
    for (p, &t) in generators.iter().zip(theta) {
        psi.apply_pauli_exponential(p, t)?;
    }
    Ok(psi)
}

fn apply_sum<T: Real>(h: &PauliSum<T>, v: &[Cx<T>]) -> Vec<Cx<T>> {
    let mut out = vec![cx(T::zero(), T::zero()); v.len()];
    for (p, &c) in h.iter() {
        let img = kernels::pauli_image(v, p.x_bits(), p.z_bits(), p.phase().power(), 0);
        for (o, a) in out.iter_mut().zip(img) {
            *o += a * c;
        }
    }
    out
}

fn rotate<T: Real>(v: &mut [Cx<T>], p: &PauliString, theta: T) {
    let img = kernels::pauli_image(v, p.x_bits(), p.z_bits(), p.phase().power(), 0);
    let c = theta.cos();
    let s = cx(T::zero(), theta.sin());
    for (a, b) in v.iter_mut().zip(img) {
        *a = *a * c + s * b;
    }
}

/// Energy and its exact gradient by one forward and one backward sweep.
///
/// With `λ = H|ψ⟩` carried back through the inverse rotations,
/// `∂E/∂θ_k = -2 Im⟨λ_k|P_k|ψ_k⟩`.
pub fn energy_and_gradient<T: Real>(
    h: &PauliSum<T>,
    reference: u64,
    generators: &[PauliString],
    theta: &[T],
) -> Result<(T, Vec<T>)> {
    let psi = ansatz_state(h.n_qubits(), reference, generators, theta)?;
    let mut fwd = psi.amplitudes().to_vec();
    let mut lam = apply_sum(h, &fwd);
    let energy = fwd.iter().zip(&lam).map(|(a, b)| a.conj() * b).sum::<Cx<T>>().re;
    let mut grad = vec![T::zero(); theta.len()];
    for k in (0..generators.len()).rev() {
        let p = &generators[k];
        let pp = kernels::pauli_image(&fwd, p.x_bits(), p.z_bits(), p.phase().power(), 0);
        let ov: Cx<T> = lam.iter().zip(&pp).map(|(a, b)| a.conj() * b).sum();
        grad[k] = T::lit(-2.0) * ov.im;
        rotate(&mut fwd, p, -theta[k]);
        rotate(&mut lam, p, -theta[k]);
    }
    Ok((energy, grad))
}

pub fn ansatz_energy<T: Real>(h: &PauliSum<T>, reference: u64, generators: &[PauliString], theta: &[T]) -> Result<T> {
    ansatz_state(h.n_qubits(), reference, generators, theta)?.expectation(h)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Optimized<T> {
    pub theta: Vec<T>,
    pub energy: T,
    pub gradient_norm: T,
    /// False when the iteration cap was reached before the gradient test.
    pub converged: bool,
}

const MAX_RESTARTS: usize = 25;

struct Problem<'a, T> {
    h: &'a PauliSum<T>,
    reference: u64,
    generators: &'a [PauliString],
    best: &'a Mutex<(f64, Vec<f64>)>,
}

impl<T: Real> Problem<'_, T> {
    fn eval(&self, x: &[f64]) -> std::result::Result<(f64, Vec<f64>), argmin::core::Error> {
        let theta: Vec<T> = x.iter().map(|&v| T::lit(v)).collect();
        let (e, g) = energy_and_gradient(self.h, self.reference, self.generators, &theta)
            .map_err(|e| argmin::core::Error::msg(e.to_string()))?;
        let e = e.as_f64();
        let mut best = self.best.lock().expect("unpoisoned");
        if e < best.0 {
            *best = (e, x.to_vec());
        }
        Ok((e, g.into_iter().map(Real::as_f64).collect()))
    }
}

impl<T: Real> CostFunction for Problem<'_, T> {
    type Param = Vec<f64>;
    type Output = f64;
    fn cost(&self, x: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        Ok(self.eval(x)?.0)
    }
}

impl<T: Real> Gradient for Problem<'_, T> {
    type Param = Vec<f64>;
    type Gradient = Vec<f64>;
    fn gradient(&self, x: &Vec<f64>) -> std::result::Result<Vec<f64>, argmin::core::Error> {
        Ok(self.eval(x)?.1)
    }
}

/// Quasi-Newton minimization of the ansatz energy from `initial`.
///
/// Never returns a point worse than `initial`.
pub fn optimize_parameters<T: Real>(
    generators: &[PauliString],
    h: &PauliSum<T>,
    reference: u64,
    initial: &[T],
    settings: &OptimizerSettings,
) -> Result<Optimized<T>> {
    if initial.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidConfig("initial parameters must be finite".into()));
    }
    let (e0, g0) = energy_and_gradient(h, reference, generators, initial)?;
    let inf_norm = |g: &[T]| g.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let start = Optimized { theta: initial.to_vec(), energy: e0, gradient_norm: inf_norm(&g0), converged: true };
    if generators.is_empty() || start.gradient_norm.as_f64() <= settings.gradient_tolerance {
        return Ok(start);
    }
    let m = generators.len();
    let mut ident = vec![vec![0.0; m]; m];
    for (i, row) in ident.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let best = Mutex::new((e0.as_f64(), initial.iter().map(|t| t.as_f64()).collect::<Vec<f64>>()));
    let mut budget = settings.max_iterations;
    let mut converged = false;
    // A BFGS run that loses positive curvature stops with a line-search
    // error; it is restarted from the best point seen with a fresh Hessian.
    for _ in 0..MAX_RESTARTS {
        let (e_before, x0) = best.lock().expect("unpoisoned").clone();
        let problem = Problem { h, reference, generators, best: &best };
        let solver = BFGS::new(MoreThuenteLineSearch::new())
            .with_tolerance_grad(settings.gradient_tolerance)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let run = Executor::new(problem, solver)
            .configure(|s| s.param(x0).inv_hessian(ident.clone()).max_iters(budget))
            .run();
        let used = match &run {
            Ok(res) => res.state().get_iter(),
            Err(_) => 1,
        };
        budget = budget.saturating_sub(used.max(1));
        let (_, g) = {
            let x = best.lock().expect("unpoisoned").1.clone();
            let theta: Vec<T> = x.iter().map(|&v| T::lit(v)).collect();
            energy_and_gradient(h, reference, generators, &theta)?
        };
        if inf_norm(&g).as_f64() <= settings.gradient_tolerance {
            converged = true;
            break;
        }
        if budget == 0 || best.lock().expect("unpoisoned").0 >= e_before {
            break;
        }
    }
    let x = best.into_inner().expect("unpoisoned").1;
    let theta: Vec<T> = x.iter().map(|&v| T::lit(v)).collect();
    let (e, g) = energy_and_gradient(h, reference, generators, &theta)?;
    if !e.is_finite() || e > e0 {
        return Ok(Optimized { converged: false, ..start });
    }
    let gn = inf_norm(&g);
    converged |= gn.as_f64() <= settings.gradient_tolerance;
    Ok(Optimized { theta, energy: e, gradient_norm: gn, converged })
}

/// Grows an ansatz from `reference` until the largest score falls to
/// `δ_f`, the energy change falls to `δ_c`, or `n_max` operators are used.
pub fn run_adapt<T: Real>(h: &LabeledHamiltonian<T>, reference: u64, cfg: &AdaptConfig) -> Result<AdaptResult<T>> {
    cfg.validate()?;
    let n = h.n_qubits;
    let ham = h.hamiltonian();
    let pool = match &cfg.pool {
        Some(p) => p.clone(),
        None => build_pool(n)?,
    };
    if let Some(p) = pool.operators.first() {
        if p.n_qubits() != n {
            return Err(Error::SizeMismatch { left: n, right: p.n_qubits() });
        }
    }
    let mut gens: Vec<PauliString> = Vec::new();
    let mut theta: Vec<T> = Vec::new();
    let reference_energy = ansatz_energy(&ham, reference, &gens, &theta)?;
    let mut energy = reference_energy;
    let mut trace = Vec::new();
    let mut converged = true;
    let termination = loop {
        if gens.len() >= cfg.n_max {
            break Termination::MaxIterations;
        }
        let psi = ansatz_state(n, reference, &gens, &theta)?;
        let circuit = build_ansatz(n, reference, &gens)?;
        let ctx = cfg.hardware.as_ref().map(|t| HardwareContext { topology: t, circuit: &circuit, config: cfg.bias });
        let scores: Vec<T> =
            pool.operators.par_iter().map(|p| score(p, &psi, &ham, ctx.as_ref())).collect::<Result<_>>()?;
        let mut best: Option<(PauliString, T)> = None;
        for (p, &f) in pool.operators.iter().zip(&scores) {
            let better = match &best {
                None => true,
                Some((q, g)) => f.abs() > g.abs() || (f.abs() == g.abs() && p < q),
            };
            if better {
                best = Some((*p, f));
            }
        }
        let Some((chosen, f)) = best else {
            break Termination::ScoreConverged;
        };
        let delta_f = f.abs().as_f64();
        if !(delta_f > cfg.delta_f) {
            break Termination::ScoreConverged;
        }
        gens.push(chosen);
        theta.push(T::zero());
        let opt = optimize_parameters(&gens, &ham, reference, &theta, &cfg.optimizer)?;
        if !opt.energy.is_finite() {
            return Err(Error::OptimizerFailure { trace });
        }
        converged &= opt.converged;
        let delta_c = (opt.energy - energy).abs().as_f64();
        theta = opt.theta;
        energy = opt.energy;
        trace.push(TraceEntry {
            iteration: gens.len(),
            operator: chosen.label(),
            score: f.as_f64(),
            energy: energy.as_f64(),
            delta_f,
            delta_c,
            cnot_count: build_ansatz(n, reference, &gens)?.cnot_count(),
        });
        if !(delta_c > cfg.delta_c) {
            break Termination::EnergyConverged;
        }
    };
    let ansatz = build_ansatz(n, reference, &gens)?;
    Ok(AdaptResult {
        reference,
        ansatz,
        generators: gens.into_iter().zip(theta).collect(),
        reference_energy,
        energy,
        trace,
        termination,
        optimizer_converged: converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::parse_hamiltonian;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn small_pools() {
        let one = build_pool(1).unwrap();
        assert_eq!(one.operators, vec![p("Y")]);
        let two: Vec<String> = build_pool(2).unwrap().operators.iter().map(|q| q.label()).collect();
        assert_eq!(two, ["IY", "YI", "XY", "YX", "YZ", "ZY"]);
        let five = build_pool(5).unwrap();
        assert_eq!(five.len(), 125);
        for w in ["IIIIY", "IIYII", "YIIII", "IIIXY", "YXIII", "IXYII", "YIIYY", "YYYII", "IIXYI", "XYIII", "IIIYX", "IYXII", "XIIYI"] {
            assert!(five.operators.contains(&p(w)), "{w}");
        }
    }

    #[test]
    fn custom_pool_checks() {
        assert!(OperatorPool::custom(vec![p("XX")]).is_err());
        assert!(OperatorPool::custom(vec![p("XY"), p("XY")]).is_err());
        assert!(OperatorPool::custom(vec![p("XY"), p("Y")]).is_err());
    }

    #[test]
    fn single_rotation_reaches_excited_basis_state() {
        let h = PauliSum::from_terms(1, [(p("Z"), 1.0f64)]).unwrap();
        let opt = optimize_parameters(&[p("Y")], &h, 0, &[0.0], &OptimizerSettings::default()).unwrap();
        // θ = 0 is a stationary point of cos 2θ; nudge to leave it.
        assert_eq!(opt.energy, 1.0);
        let opt = optimize_parameters(&[p("Y")], &h, 0, &[0.1], &OptimizerSettings::default()).unwrap();
        assert!((opt.energy + 1.0).abs() < 1e-12);
        let again = optimize_parameters(&[p("Y")], &h, 0, &opt.theta, &OptimizerSettings::default()).unwrap();
        assert!((again.theta[0] - opt.theta[0]).abs() < 1e-8);
    }

    #[test]
    fn diagonal_hamiltonian_stops_immediately() {
        let h = parse_hamiltonian::<f64>("[identity] 0.5\n[clique 0]\n+1.0 IZ\n+0.5 ZI\n+0.25 ZZ\n").unwrap();
        let r = run_adapt(&h, 0, &AdaptConfig::default()).unwrap();
        assert_eq!(r.termination, Termination::ScoreConverged);
        assert!(r.generators.is_empty());
        assert_eq!(r.energy, 2.25);
    }

    #[test]
    fn loop_conditions() {
        let h = parse_hamiltonian::<f64>("[clique 0]\n+1.0 ZZ\n[clique 1]\n+0.5 XX\n").unwrap();
        let r = run_adapt(&h, 0, &AdaptConfig { n_max: 0, ..AdaptConfig::default() }).unwrap();
        assert_eq!(r.termination, Termination::MaxIterations);
        assert!(r.trace.is_empty());
        let r = run_adapt(&h, 0, &AdaptConfig { delta_f: f64::INFINITY, ..AdaptConfig::default() }).unwrap();
        assert_eq!(r.termination, Termination::ScoreConverged);
        assert!(r.trace.is_empty());
        assert!(run_adapt(&h, 0, &AdaptConfig { delta_c: 0.0, ..AdaptConfig::default() }).is_err());
    }
}
