//! Error mitigation: readout-confusion inversion, zero-noise extrapolation
//! over amplified circuits, and shot pooling across tiled replicas.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{amplify_noise, insert_dd, Circuit, Gate, GateDurations};
use crate::error::{Error, Result};
use crate::hamiltonian::LabeledHamiltonian;
use crate::pauli::PauliSum;
use crate::scalar::Real;
use crate::sim::{
    clique_probabilities, depolarize, derive_seed, sample_distribution, DensityMatrix, MeasurementRecord,
    NoiseChannelSpec, QuantumState,
};
use crate::topology::TilingPlan;

/// Column-stochastic 2×2 readout matrix, `a[measured][prepared]`.
pub type Confusion2 = [[f64; 2]; 2];

/// Product readout noise: outcome bit `k` is flipped according to
/// `per_qubit[k]`, so `noisy = (⊗_k A^(k)) · true`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfusionModel {
    pub per_qubit: Vec<Confusion2>,
}

impl ConfusionModel {
    pub fn identity(n_qubits: usize) -> Self {
        Self { per_qubit: vec![[[1.0, 0.0], [0.0, 1.0]]; n_qubits] }
    }

    /// From `(P(1|0), P(0|1))` flip probabilities per qubit.
    pub fn from_flips(flips: &[(f64, f64)]) -> Result<Self> {
        let m = Self { per_qubit: flips.iter().map(|&(p01, p10)| [[1.0 - p01, p10], [p01, 1.0 - p10]]).collect() };
        m.validate()?;
        Ok(m)
    }

    pub fn n_qubits(&self) -> usize {
        self.per_qubit.len()
    }

    pub fn validate(&self) -> Result<()> {
        for (qubit, a) in self.per_qubit.iter().enumerate() {
            let bad = |msg: &str| Err(Error::InvalidConfusion { qubit, msg: msg.into() });
            if a.iter().flatten().any(|x| !(0.0..=1.0).contains(x)) {
                return bad("entries must lie in [0, 1]");
            }
            for col in 0..2 {
                if (a[0][col] + a[1][col] - 1.0).abs() > 1e-12 {
                    return bad("columns must sum to 1");
                }
            }
            if !(a[0][0] > 0.5 && a[1][1] > 0.5) {
                return bad("diagonal entries must exceed 0.5");
            }
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            if det.abs() < 1e-6 {
                return Err(Error::SingularConfusion { qubit, det });
            }
        }
        Ok(())
    }

    fn inverses(&self) -> Result<Vec<Confusion2>> {
        self.validate()?;
        Ok(self
            .per_qubit
            .iter()
            .map(|a| {
                let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
                [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
            })
            .collect())
    }

    /// Distribution seen through the readout noise.
    pub fn apply(&self, dist: &[f64]) -> Result<Vec<f64>> {
        self.validate()?;
        let mut out = dist.to_vec();
        apply_factors(&mut out, &self.per_qubit, false)?;
        Ok(out)
    }

    /// `(⊗ A^(k))^{-1} · dist`, possibly with negative entries.
    pub fn invert(&self, dist: &[f64]) -> Result<Vec<f64>> {
        let mut out = dist.to_vec();
        apply_factors(&mut out, &self.inverses()?, false)?;
        Ok(out)
    }

    /// Observable values rewritten so that their mean over noisy outcomes
    /// equals the mitigated mean: `(⊗ A^(k))^{-T} · o`.
    pub fn mitigated_observable(&self, values: &[f64]) -> Result<Vec<f64>> {
        let mut out = values.to_vec();
        apply_factors(&mut out, &self.inverses()?, true)?;
        Ok(out)
    }

    /// Every flip probability multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let flips: Vec<(f64, f64)> = self.per_qubit.iter().map(|a| (a[1][0] * factor, a[0][1] * factor)).collect();
        Self::from_flips(&flips)
    }
}

fn apply_factors(v: &mut [f64], factors: &[Confusion2], transpose: bool) -> Result<()> {
    let n = factors.len();
    if v.len() != 1 << n {
        return Err(Error::SizeMismatch { left: n, right: v.len().trailing_zeros() as usize });
    }
    for (k, a) in factors.iter().enumerate() {
        let a = if transpose { [[a[0][0], a[1][0]], [a[0][1], a[1][1]]] } else { *a };
        let bit = 1usize << k;
        for i in 0..v.len() {
            if i & bit == 0 {
                let (x0, x1) = (v[i], v[i | bit]);
                v[i] = a[0][0] * x0 + a[0][1] * x1;
                v[i | bit] = a[1][0] * x0 + a[1][1] * x1;
            }
        }
    }
    Ok(())
}

/// Empirical outcome distribution of `record` with the readout noise of
/// `model` undone. Entries sum to one and may be negative.
pub fn mitigate_counts(record: &MeasurementRecord, model: &ConfusionModel) -> Result<Vec<f64>> {
    if record.shots == 0 {
        return Err(Error::ZeroShots);
    }
    let dim = 1usize << model.n_qubits();
    let mut dist = vec![0.0; dim];
    for (&x, &c) in &record.counts {
        let slot = dist
            .get_mut(x as usize)
            .ok_or_else(|| Error::InvalidConfig(format!("outcome {x} not covered by a {}-qubit model", model.n_qubits())))?;
        *slot = c as f64 / record.shots as f64;
    }
    model.invert(&dist)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitKind {
    #[default]
    Linear,
    Quadratic,
    /// Polynomial of degree `points - 1` through every point.
    Richardson,
}

impl std::str::FromStr for FitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "quadratic" => Ok(Self::Quadratic),
            "richardson" => Ok(Self::Richardson),
            _ => Err(Error::InvalidConfig(format!("unknown fit kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZnePoint {
    pub lambda: u32,
    pub energy: f64,
    pub std_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZneSeries {
    pub points: Vec<ZnePoint>,
    pub fit_kind: FitKind,
}

impl ZneSeries {
    pub fn validate(&self) -> Result<()> {
        let need = match self.fit_kind {
            FitKind::Linear => 2,
            FitKind::Quadratic | FitKind::Richardson => 3,
        };
        if self.points.len() < need {
            return Err(Error::InvalidSeries(format!("{:?} fit needs at least {need} points", self.fit_kind)));
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &self.points {
            if p.lambda == 0 {
                return Err(Error::InvalidLambda);
            }
            if !seen.insert(p.lambda) {
                return Err(Error::InvalidSeries(format!("repeated λ = {}", p.lambda)));
            }
            if !p.energy.is_finite() || !(p.std_error >= 0.0) || !p.std_error.is_finite() {
                return Err(Error::InvalidSeries(format!("bad point at λ = {}", p.lambda)));
            }
        }
        Ok(())
    }

    fn degree(&self) -> usize {
        match self.fit_kind {
            FitKind::Linear => 1,
            FitKind::Quadratic => 2,
            FitKind::Richardson => self.points.len() - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZneFit {
    pub kind: FitKind,
    /// Polynomial coefficients in `λ`, constant term first.
    pub coefficients: Vec<f64>,
    pub e0: f64,
    pub uncertainty: f64,
}

/// Weighted least-squares polynomial fit evaluated at `λ = 0`.
///
/// Weights are `1/σ²` when every point carries a positive error and
/// uniform otherwise; the uncertainty is propagated through the linear
/// estimator in either case.
pub fn extrapolate(series: &ZneSeries) -> Result<ZneFit> {
    series.validate()?;
    let m = series.points.len();
    let cols = series.degree() + 1;
    // Powers of λ can be large; scale λ to keep the normal matrix tame.
    let scale = series.points.iter().map(|p| p.lambda as f64).fold(1.0, f64::max);
    let x = DMatrix::from_fn(m, cols, |i, j| (series.points[i].lambda as f64 / scale).powi(j as i32));
    let weighted = series.points.iter().all(|p| p.std_error > 0.0);
    let w = DVector::from_iterator(m, series.points.iter().map(|p| if weighted { p.std_error.powi(-2) } else { 1.0 }));
    let xtw = DMatrix::from_fn(cols, m, |j, i| x[(i, j)] * w[i]);
    let normal = &xtw * &x;
    let inv = normal.clone().cholesky().ok_or(Error::DegenerateFit)?.inverse();
    let design = &inv * &xtw;
    let e = DVector::from_iterator(m, series.points.iter().map(|p| p.energy));
    let beta = &design * &e;
    if beta.iter().any(|b| !b.is_finite()) {
        return Err(Error::DegenerateFit);
    }
    let var: f64 = (0..m).map(|i| (design[(0, i)] * series.points[i].std_error).powi(2)).sum();
    Ok(ZneFit {
        kind: series.fit_kind,
        coefficients: beta.iter().enumerate().map(|(j, b)| b / scale.powi(j as i32)).collect(),
        e0: beta[0],
        uncertainty: var.sqrt(),
    })
}

/// Flip probabilities for one readout channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReadoutFlip {
    /// Probability of reading 1 after preparing 0.
    pub p01: f64,
    /// Probability of reading 0 after preparing 1.
    pub p10: f64,
}

/// Gate and readout noise of one device.
///
/// Every non-`RZ` single-qubit gate is followed by depolarizing noise of
/// strength `p_1q` on its qubit and every two-qubit gate by `p_2q` on both
/// qubits (replacement form, see [`NoiseChannelSpec::Depolarizing`]).
/// `RZ` is a frame change and noiseless. Each tile scales all rates by its
/// own factor: `tile_scales` when given, otherwise uniform draws from
/// `[1 - tile_spread, 1 + tile_spread]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub p_1q: f64,
    pub p_2q: f64,
    pub readout: Vec<ReadoutFlip>,
    #[serde(default)]
    pub tile_spread: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tile_scales: Option<Vec<f64>>,
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self {
            p_1q: 0.0,
            p_2q: 0.01,
            readout: vec![ReadoutFlip { p01: 0.01, p10: 0.02 }; 5],
            tile_spread: 0.25,
            tile_scales: None,
        }
    }
}

impl NoiseModel {
    pub fn noiseless(n_qubits: usize) -> Self {
        Self {
            p_1q: 0.0,
            p_2q: 0.0,
            readout: vec![ReadoutFlip { p01: 0.0, p10: 0.0 }; n_qubits],
            tile_spread: 0.0,
            tile_scales: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: Self = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p_1q", self.p_1q), ("p_2q", self.p_2q)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} = {p} outside [0, 1]")));
            }
        }
        if !(0.0..1.0).contains(&self.tile_spread) {
            return Err(Error::InvalidConfig("tile_spread must lie in [0, 1)".into()));
        }
        if let Some(s) = &self.tile_scales {
            if s.is_empty() || s.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
                return Err(Error::InvalidConfig("tile_scales must be non-empty and non-negative".into()));
            }
        }
        self.confusion(1.0).map(|_| ())
    }

    pub fn confusion(&self, scale: f64) -> Result<ConfusionModel> {
        let flips: Vec<(f64, f64)> = self.readout.iter().map(|r| (r.p01 * scale, r.p10 * scale)).collect();
        ConfusionModel::from_flips(&flips)
    }

    /// Per-tile rate multipliers for `tiles` replicas.
    pub fn tile_factors(&self, tiles: usize, seed: u64) -> Result<Vec<f64>> {
        match &self.tile_scales {
            Some(s) if s.len() != tiles => Err(Error::InvalidConfig(format!(
                "noise model lists {} tile scales but {tiles} tiles are used",
                s.len()
            ))),
            Some(s) => Ok(s.clone()),
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[TILE_SCALE_STREAM]));
                Ok((0..tiles).map(|_| 1.0 + self.tile_spread * (2.0 * rng.random::<f64>() - 1.0)).collect())
            }
        }
    }
}

const TILE_SCALE_STREAM: u64 = u64::MAX;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MitigationConfig {
    pub lambdas: Vec<u32>,
    /// Shots per clique per tile.
    pub shots: u64,
    pub mem: bool,
    pub dd: bool,
    pub fit: FitKind,
    pub seed: u64,
    pub durations: GateDurations,
}

impl Default for MitigationConfig {
    fn default() -> Self {
        Self {
            lambdas: vec![1, 2, 3],
            shots: 100_000,
            mem: true,
            dd: false,
            fit: FitKind::Linear,
            seed: 0,
            durations: GateDurations::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileEstimate {
    pub tile: usize,
    pub scale: f64,
    pub energy: f64,
    pub std_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaEstimate {
    pub lambda: u32,
    pub cnot_count: usize,
    pub energy: f64,
    pub std_error: f64,
    pub tiles: Vec<TileEstimate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MitigationReport {
    pub noiseless_energy: f64,
    /// Unamplified circuit, no readout correction, no decoupling.
    pub raw: LambdaEstimate,
    pub points: Vec<LambdaEstimate>,
    pub fit: ZneFit,
    pub energy: f64,
    pub uncertainty: f64,
    pub tiles: usize,
    pub effective_shots: u64,
}

/// Density matrix after running `circuit` under `noise` rates times `scale`.
pub fn noisy_state<T: Real>(circuit: &Circuit, params: &[T], noise: &NoiseModel, scale: f64) -> Result<DensityMatrix<T>> {
    let p1 = (noise.p_1q * scale).min(1.0);
    let p2 = (noise.p_2q * scale).min(1.0);
    let mut rho = DensityMatrix::zero(circuit.n_qubits())?;
    circuit.simulate_mixed(params, &mut rho, |g, rho| match *g {
        Gate::RZ(..) => Ok(()),
        Gate::CNOT(a, b) | Gate::CP(a, b, _) if p2 > 0.0 => depolarize(rho, NoiseChannelSpec::Depolarizing { p: p2 }, &[a, b]),
        Gate::SX(q) | Gate::X(q) | Gate::H(q) if p1 > 0.0 => depolarize(rho, NoiseChannelSpec::Depolarizing { p: p1 }, &[q]),
        _ => Ok(()),
    })?;
    Ok(rho)
}

fn clique_values<T: Real>(clique: &PauliSum<T>, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|x| {
            clique
                .iter()
                .map(|(p, c)| if ((x as u64) & p.support_mask()).count_ones() % 2 == 1 { -c.as_f64() } else { c.as_f64() })
                .sum()
        })
        .collect()
}

struct Job {
    lambda: u32,
    tile: usize,
    scale: f64,
    mem: bool,
    dd: bool,
}

fn estimate_tile<T: Real>(
    h: &LabeledHamiltonian<T>,
    circuit: &Circuit,
    params: &[T],
    noise: &NoiseModel,
    cfg: &MitigationConfig,
    job: &Job,
) -> Result<(f64, f64)> {
    let mut c = if job.lambda == 0 { circuit.clone() } else { amplify_noise(circuit, job.lambda)? };
    if job.dd {
        c = insert_dd(&c, &cfg.durations)?;
    }
    let rho = QuantumState::Mixed(noisy_state(&c, params, noise, job.scale)?);
    let readout = noise.confusion(job.scale)?;
    let dim = 1usize << h.n_qubits;
    let mut energy = h.cover.identity_coeff.as_f64();
    let mut var = 0.0;
    for (k, clique) in h.cover.cliques.iter().enumerate() {
        let probs: Vec<f64> = clique_probabilities(&rho, clique)?.into_iter().map(Real::as_f64).collect();
        let noisy = readout.apply(&probs)?;
        let seed = derive_seed(cfg.seed, &[k as u64, job.lambda as u64, job.tile as u64]);
        let counts = sample_distribution(&noisy, cfg.shots, &mut ChaCha8Rng::seed_from_u64(seed));
        let mut values = clique_values(clique, dim);
        if job.mem {
            values = readout.mitigated_observable(&values)?;
        }
        let n = cfg.shots as f64;
        let mean: f64 = counts.iter().map(|(&x, &c)| values[x as usize] * c as f64).sum::<f64>() / n;
        let second: f64 = counts.iter().map(|(&x, &c)| values[x as usize].powi(2) * c as f64).sum::<f64>() / n;
        energy += mean;
        var += (second - mean * mean).max(0.0) / n;
    }
    Ok((energy, var.sqrt()))
}

/// Full mitigation pipeline for one circuit.
///
/// For every `λ` the circuit is amplified, optionally padded with
/// decoupling pulses, simulated on each tile under that tile's noise,
/// sampled and optionally readout-corrected. Tile estimates are averaged
/// with equal weight and the per-`λ` energies are extrapolated to zero.
pub fn run_mitigated_energy<T: Real>(
    h: &LabeledHamiltonian<T>,
    ansatz: &Circuit,
    params: &[T],
    noise: &NoiseModel,
    plan: Option<&TilingPlan>,
    cfg: &MitigationConfig,
) -> Result<MitigationReport> {
    noise.validate()?;
    if cfg.shots == 0 {
        return Err(Error::ZeroShots);
    }
    if ansatz.n_qubits() != h.n_qubits {
        return Err(Error::SizeMismatch { left: h.n_qubits, right: ansatz.n_qubits() });
    }
    if noise.readout.len() != h.n_qubits {
        return Err(Error::SizeMismatch { left: h.n_qubits, right: noise.readout.len() });
    }
    let tiles = plan.map_or(1, |p| p.blocks.len());
    if tiles == 0 {
        return Err(Error::InvalidConfig("tiling plan has no blocks".into()));
    }
    let scales = noise.tile_factors(tiles, cfg.seed)?;
    let mut jobs = Vec::new();
    for t in 0..tiles {
        jobs.push(Job { lambda: 0, tile: t, scale: scales[t], mem: false, dd: false });
    }
    for &lambda in &cfg.lambdas {
        if lambda == 0 {
            return Err(Error::InvalidLambda);
        }
        for t in 0..tiles {
            jobs.push(Job { lambda, tile: t, scale: scales[t], mem: cfg.mem, dd: cfg.dd });
        }
    }
    let results: Vec<(f64, f64)> =
        jobs.par_iter().map(|j| estimate_tile(h, ansatz, params, noise, cfg, j)).collect::<Result<_>>()?;

    let group = |lambda: u32, cnots: usize, chunk: &[(f64, f64)]| {
        let energy = chunk.iter().map(|r| r.0).sum::<f64>() / tiles as f64;
        let se = chunk.iter().map(|r| r.1 * r.1).sum::<f64>().sqrt() / tiles as f64;
        LambdaEstimate {
            lambda,
            cnot_count: cnots,
            energy,
            std_error: se,
            tiles: chunk
                .iter()
                .enumerate()
                .map(|(t, r)| TileEstimate { tile: t, scale: scales[t], energy: r.0, std_error: r.1 })
                .collect(),
        }
    };
    let raw = group(0, ansatz.cnot_count(), &results[..tiles]);
    let mut points = Vec::new();
    for (i, &lambda) in cfg.lambdas.iter().enumerate() {
        let chunk = &results[tiles * (i + 1)..tiles * (i + 2)];
        points.push(group(lambda, ansatz.cnot_count() * 2 * lambda as usize, chunk));
    }
    let series = ZneSeries {
        points: points.iter().map(|p| ZnePoint { lambda: p.lambda, energy: p.energy, std_error: p.std_error }).collect(),
        fit_kind: cfg.fit,
    };
    let fit = extrapolate(&series)?;
    let noiseless = ansatz.statevector(params)?.expectation(&h.hamiltonian())?.as_f64();
    Ok(MitigationReport {
        noiseless_energy: noiseless,
        raw,
        points,
        energy: fit.e0,
        uncertainty: fit.uncertainty,
        fit,
        tiles,
        effective_shots: cfg.shots * tiles as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_inverse_recovers_prepared_zero() {
        let m = ConfusionModel { per_qubit: vec![[[0.9, 0.2], [0.1, 0.8]]] };
        let out = m.invert(&[0.9, 0.1]).unwrap();
        assert!((out[0] - 1.0).abs() < 1e-12 && out[1].abs() < 1e-12);
    }

    #[test]
    fn identity_model_is_transparent() {
        let rec = MeasurementRecord::new(0, [(0, 3), (2, 1)].into());
        let q = mitigate_counts(&rec, &ConfusionModel::identity(2)).unwrap();
        assert_eq!(q, vec![0.75, 0.0, 0.25, 0.0]);
    }

    #[test]
    fn confusion_validation() {
        assert!(ConfusionModel::from_flips(&[(0.6, 0.1)]).is_err());
        let bad = ConfusionModel { per_qubit: vec![[[0.9, 0.2], [0.2, 0.8]]] };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfusion { .. })));
    }

    #[test]
    fn exact_line_and_constant() {
        let pts = |e: [f64; 3]| {
            (1..=3).zip(e).map(|(l, energy)| ZnePoint { lambda: l, energy, std_error: 0.0 }).collect::<Vec<_>>()
        };
        let fit = extrapolate(&ZneSeries { points: pts([-1.0, -0.9, -0.8]), fit_kind: FitKind::Linear }).unwrap();
        assert!((fit.e0 + 1.1).abs() < 1e-12);
        for kind in [FitKind::Linear, FitKind::Quadratic, FitKind::Richardson] {
            let fit = extrapolate(&ZneSeries { points: pts([-2.5; 3]), fit_kind: kind }).unwrap();
            assert!((fit.e0 + 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn series_validation() {
        let p = |l| ZnePoint { lambda: l, energy: 0.0, std_error: 0.1 };
        let bad = |points, fit_kind| extrapolate(&ZneSeries { points, fit_kind }).is_err();
        assert!(bad(vec![p(1)], FitKind::Linear));
        assert!(bad(vec![p(1), p(2)], FitKind::Quadratic));
        assert!(bad(vec![p(1), p(1), p(2)], FitKind::Linear));
        assert!(bad(vec![p(0), p(1)], FitKind::Linear));
    }

    #[test]
    fn weighted_uncertainty_of_two_point_line() {
        // Two points: E₀ = 2E₁ - E₂, σ₀² = 4σ₁² + σ₂².
        let points = vec![
            ZnePoint { lambda: 1, energy: 1.0, std_error: 0.1 },
            ZnePoint { lambda: 2, energy: 1.5, std_error: 0.2 },
        ];
        let fit = extrapolate(&ZneSeries { points, fit_kind: FitKind::Linear }).unwrap();
        assert!((fit.e0 - 0.5).abs() < 1e-12);
        assert!((fit.uncertainty - (0.04f64 + 0.04).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn noise_model_round_trip() {
        let m = NoiseModel::default();
        assert_eq!(NoiseModel::from_json(&m.to_json()).unwrap(), m);
        let f = m.tile_factors(5, 3).unwrap();
        assert_eq!(f, m.tile_factors(5, 3).unwrap());
        assert!(f.iter().all(|s| (0.75..=1.25).contains(s)));
        let explicit = NoiseModel { tile_scales: Some(vec![0.5, 1.5]), ..m };
        assert!(explicit.tile_factors(3, 0).is_err());
    }
}
