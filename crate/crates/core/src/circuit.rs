//! Gate-level circuits over the native set {SX, X, H, RZ, CNOT, CP}.
//!
//! Angles are either fixed or `scale · θ_slot`. Slots are named, so circuits
//! built separately can be concatenated by name.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString, Phase};
use crate::scalar::Real;
use crate::sim::{kernels, DensityMatrix, StateVector};
use crate::topology::CouplingGraph;

const ANGLE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Angle {
    Fixed(f64),
    Param { slot: usize, scale: f64 },
}

impl Angle {
    pub fn value<T: Real>(&self, params: &[T]) -> Result<T> {
        match *self {
            Angle::Fixed(a) => Ok(T::lit(a)),
            Angle::Param { slot, scale } => params
                .get(slot)
                .map(|&t| t * T::lit(scale))
                .ok_or_else(|| Error::InvalidConfig(format!("missing value for parameter slot {slot}"))),
        }
    }

    fn negates(&self, other: &Angle) -> bool {
        match (*self, *other) {
            (Angle::Fixed(a), Angle::Fixed(b)) => (a + b).abs() < ANGLE_EPS,
            (Angle::Param { slot: s, scale: a }, Angle::Param { slot: t, scale: b }) => {
                s == t && (a + b).abs() < ANGLE_EPS
            }
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    SX(usize),
    X(usize),
    H(usize),
    RZ(usize, Angle),
    CNOT(usize, usize),
    CP(usize, usize, Angle),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::SX(q) | Gate::X(q) | Gate::H(q) | Gate::RZ(q, _) => vec![q],
            Gate::CNOT(a, b) | Gate::CP(a, b, _) => vec![a, b],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::CNOT(..) | Gate::CP(..))
    }

    fn angle_mut(&mut self) -> Option<&mut Angle> {
        match self {
            Gate::RZ(_, a) | Gate::CP(_, _, a) => Some(a),
            _ => None,
        }
    }

    fn cancels(&self, next: &Gate) -> bool {
        match (self, next) {
            (Gate::X(a), Gate::X(b)) | (Gate::H(a), Gate::H(b)) => a == b,
            (Gate::CNOT(a, b), Gate::CNOT(c, d)) => a == c && b == d,
            (Gate::RZ(a, x), Gate::RZ(b, y)) => a == b && x.negates(y),
            (Gate::CP(a, b, x), Gate::CP(c, d, y)) => {
                ((a == c && b == d) || (a == d && b == c)) && x.negates(y)
            }
            _ => false,
        }
    }

    fn apply_pure<T: Real>(&self, params: &[T], psi: &mut StateVector<T>) -> Result<()> {
        match *self {
            Gate::SX(q) => psi.apply_1q(q, &kernels::sqrt_x()),
            Gate::X(q) => psi.apply_1q(q, &kernels::pauli_x()),
            Gate::H(q) => psi.apply_1q(q, &kernels::hadamard()),
            Gate::RZ(q, a) => psi.apply_1q(q, &kernels::rz(a.value(params)?)),
            Gate::CNOT(c, t) => psi.apply_cnot(c, t),
            Gate::CP(a, b, phi) => psi.apply_cphase(a, b, phi.value(params)?),
        }
    }

    fn apply_mixed<T: Real>(&self, params: &[T], rho: &mut DensityMatrix<T>) -> Result<()> {
        match *self {
            Gate::SX(q) => rho.apply_1q(q, &kernels::sqrt_x()),
            Gate::X(q) => rho.apply_1q(q, &kernels::pauli_x()),
            Gate::H(q) => rho.apply_1q(q, &kernels::hadamard()),
            Gate::RZ(q, a) => rho.apply_1q(q, &kernels::rz(a.value(params)?)),
            Gate::CNOT(c, t) => rho.apply_cnot(c, t),
            Gate::CP(a, b, phi) => rho.apply_cphase(a, b, phi.value(params)?),
        }
    }
}

/// Ordered gate list with named parameter slots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    slots: Vec<String>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new(), slots: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Slot names; parameter vectors are indexed in this order.
    pub fn slots(&self) -> &[String] {
        &self.slots
    }

    pub fn n_params(&self) -> usize {
        self.slots.len()
    }

    /// Index of slot `name`, registering it if new.
    pub fn slot(&mut self, name: &str) -> usize {
        match self.slots.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                self.slots.push(name.to_string());
                self.slots.len() - 1
            }
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        for &q in &qs {
            if q >= self.n_qubits {
                return Err(Error::InvalidQubit { qubit: q, n_qubits: self.n_qubits });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidConfig(format!("two-qubit gate on repeated qubit {}", qs[0])));
        }
        let mut g = gate;
        if let Some(Angle::Param { slot, .. }) = g.angle_mut() {
            if *slot >= self.slots.len() {
                return Err(Error::InvalidConfig(format!("unknown parameter slot {slot}")));
            }
        }
        self.gates.push(g);
        Ok(())
    }

    /// Appends `other`, merging parameter slots by name.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::SizeMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        let remap: Vec<usize> = other.slots.iter().map(|s| self.slot(s)).collect();
        for g in &other.gates {
            let mut g = *g;
            if let Some(Angle::Param { slot, .. }) = g.angle_mut() {
                *slot = remap[*slot];
            }
            self.gates.push(g);
        }
        Ok(())
    }

    /// Checks operand ranges and that every slot is referenced.
    pub fn validate(&self) -> Result<()> {
        let mut used = vec![false; self.slots.len()];
        for g in &self.gates {
            let qs = g.qubits();
            for &q in &qs {
                if q >= self.n_qubits {
                    return Err(Error::InvalidQubit { qubit: q, n_qubits: self.n_qubits });
                }
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(Error::InvalidConfig(format!("two-qubit gate on repeated qubit {}", qs[0])));
            }
            let mut g = *g;
            if let Some(Angle::Param { slot, .. }) = g.angle_mut() {
                *used.get_mut(*slot).ok_or_else(|| Error::InvalidConfig(format!("unknown slot {slot}")))? = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::InvalidConfig(format!("parameter slot `{}` is never used", self.slots[i])));
        }
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::CNOT(..))).count()
    }

    pub fn single_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_two_qubit()).count()
    }

    pub fn simulate<T: Real>(&self, params: &[T], psi: &mut StateVector<T>) -> Result<()> {
        self.check_run(params.len(), psi.n_qubits())?;
        for g in &self.gates {
            g.apply_pure(params, psi)?;
        }
        Ok(())
    }

    /// Runs the circuit from `|0…0⟩`.
    pub fn statevector<T: Real>(&self, params: &[T]) -> Result<StateVector<T>> {
        let mut psi = StateVector::zero(self.n_qubits)?;
        self.simulate(params, &mut psi)?;
        Ok(psi)
    }

    /// Density-matrix evolution; `after_gate` runs after every gate and is
    /// where noise channels are attached.
    pub fn simulate_mixed<T, F>(&self, params: &[T], rho: &mut DensityMatrix<T>, mut after_gate: F) -> Result<()>
    where
        T: Real,
        F: FnMut(&Gate, &mut DensityMatrix<T>) -> Result<()>,
    {
        self.check_run(params.len(), rho.n_qubits())?;
        for g in &self.gates {
            g.apply_mixed(params, rho)?;
            after_gate(g, rho)?;
        }
        Ok(())
    }

    fn check_run(&self, n_params: usize, n_qubits: usize) -> Result<()> {
        if n_qubits != self.n_qubits {
            return Err(Error::SizeMismatch { left: self.n_qubits, right: n_qubits });
        }
        if n_params != self.slots.len() {
            return Err(Error::InvalidConfig(format!(
                "circuit has {} parameter slots but {n_params} values were given",
                self.slots.len()
            )));
        }
        Ok(())
    }
}

/// Gates realizing `e^{iθP}` with `θ` bound to slot `slot`.
///
/// Each support qubit is rotated so its letter becomes `Z`, a CNOT ladder
/// over the ascending support collects the parity on the highest qubit,
/// `RZ(-2θ)` acts there, and the ladder and rotations are undone.
pub fn compile_exponential(p: &PauliString, slot: &str) -> Result<Circuit> {
    let mut c = Circuit::new(p.n_qubits());
    let s = c.slot(slot);
    append_exponential(&mut c, p, s)?;
    Ok(c)
}

fn append_exponential(c: &mut Circuit, p: &PauliString, slot: usize) -> Result<()> {
    if p.is_identity() {
        return Err(Error::IdentityExponential);
    }
    let sign = match p.phase() {
        Phase::PlusOne => 1.0,
        Phase::MinusOne => -1.0,
        Phase::PlusI => return Err(Error::NonHermitian("+i")),
        Phase::MinusI => return Err(Error::NonHermitian("-i")),
    };
    let support = p.support();
    let half_pi = std::f64::consts::FRAC_PI_2;
    for &q in &support {
        match p.letter(q) {
            Letter::X => c.push(Gate::H(q))?,
            Letter::Y => {
                c.push(Gate::RZ(q, Angle::Fixed(-half_pi)))?;
                c.push(Gate::H(q))?;
            }
            _ => {}
        }
    }
    for w in support.windows(2) {
        c.push(Gate::CNOT(w[0], w[1]))?;
    }
    let pivot = *support.last().expect("non-identity word");
    c.push(Gate::RZ(pivot, Angle::Param { slot, scale: -2.0 * sign }))?;
    for w in support.windows(2).rev() {
        c.push(Gate::CNOT(w[0], w[1]))?;
    }
    for &q in support.iter().rev() {
        match p.letter(q) {
            Letter::X => c.push(Gate::H(q))?,
            Letter::Y => {
                c.push(Gate::H(q))?;
                c.push(Gate::RZ(q, Angle::Fixed(half_pi)))?;
            }
            _ => {}
        }
    }
    Ok(())
}

/// `∏_k e^{iθ_k P_k}|reference⟩`, with `X` gates preparing the reference
/// and slot `theta{k}` for generator `k`, followed by inverse cancellation.
pub fn build_ansatz(n_qubits: usize, reference: u64, generators: &[PauliString]) -> Result<Circuit> {
    let mut c = Circuit::new(n_qubits);
    for q in 0..n_qubits {
        if reference >> q & 1 == 1 {
            c.push(Gate::X(q))?;
        }
    }
    if n_qubits < 64 && reference >> n_qubits != 0 {
        return Err(Error::InvalidConfig(format!("reference {reference:#b} exceeds {n_qubits} qubits")));
    }
    for (k, p) in generators.iter().enumerate() {
        if p.n_qubits() != n_qubits {
            return Err(Error::SizeMismatch { left: n_qubits, right: p.n_qubits() });
        }
        let s = c.slot(&format!("theta{k}"));
        append_exponential(&mut c, p, s)?;
    }
    Ok(cancel_inverses(&c))
}

/// Removes pairs of mutually inverse gates that are adjacent on all their
/// wires, repeating until none remain.
pub fn cancel_inverses(c: &Circuit) -> Circuit {
    let mut out: Vec<Option<Gate>> = Vec::with_capacity(c.gates.len());
    let mut wire: Vec<Vec<usize>> = vec![Vec::new(); c.n_qubits];
    for g in &c.gates {
        let qs = g.qubits();
        let last = wire[qs[0]].last().copied();
        let partner = last.filter(|&i| {
            qs.iter().all(|&q| wire[q].last() == Some(&i))
                && out[i].as_ref().is_some_and(|prev| prev.qubits().len() == qs.len() && prev.cancels(g))
        });
        match partner {
            Some(i) => {
                out[i] = None;
                for &q in &qs {
                    wire[q].pop();
                }
            }
            None => {
                for &q in &qs {
                    wire[q].push(out.len());
                }
                out.push(Some(*g));
            }
        }
    }
    let mut r = Circuit { n_qubits: c.n_qubits, gates: out.into_iter().flatten().collect(), slots: Vec::new() };
    // Keep only slots still referenced, preserving their order.
    let mut used: Vec<usize> = Vec::new();
    for g in &r.gates {
        if let Gate::RZ(_, Angle::Param { slot, .. }) | Gate::CP(_, _, Angle::Param { slot, .. }) = g {
            if !used.contains(slot) {
                used.push(*slot);
            }
        }
    }
    used.sort_unstable();
    r.slots = used.iter().map(|&s| c.slots[s].clone()).collect();
    for g in &mut r.gates {
        if let Some(Angle::Param { slot, .. }) = g.angle_mut() {
            *slot = used.binary_search(slot).expect("slot retained");
        }
    }
    r
}

/// Two-qubit interaction graph; edge weights count gates on each pair.
pub fn coupling_graph(c: &Circuit) -> CouplingGraph {
    let mut g = CouplingGraph::new();
    for gate in &c.gates {
        let qs = gate.qubits();
        for &q in &qs {
            g.add_node(q);
        }
        if qs.len() == 2 {
            g.add_edge(qs[0], qs[1], 1);
        }
    }
    g
}

/// Gate durations in arbitrary time units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateDurations {
    pub single: f64,
    pub cnot: f64,
    pub cp: f64,
}

impl Default for GateDurations {
    fn default() -> Self {
        Self { single: 1.0, cnot: 2.0, cp: 2.0 }
    }
}

impl GateDurations {
    fn of(&self, g: &Gate) -> f64 {
        match g {
            Gate::CNOT(..) => self.cnot,
            Gate::CP(..) => self.cp,
            _ => self.single,
        }
    }
}

/// Fills idle windows with uniformly spaced `X` pulses.
///
/// Gates are scheduled as soon as possible. A qubit is idle between two of
/// its gates and from its last gate to the end of the circuit; qubits that
/// are never touched stay untouched. A window of length `L ≥ 2·t_X`
/// receives `2·⌊L / (2·t_X)⌋` pulses.
pub fn insert_dd(c: &Circuit, durations: &GateDurations) -> Result<Circuit> {
    if !(durations.single > 0.0 && durations.cnot > 0.0 && durations.cp > 0.0) {
        return Err(Error::InvalidConfig("gate durations must be positive".into()));
    }
    let tx = durations.single;
    let mut avail = vec![0.0f64; c.n_qubits];
    let mut touched = vec![false; c.n_qubits];
    let mut windows: Vec<Vec<(f64, f64)>> = vec![Vec::new(); c.n_qubits];
    let mut timed: Vec<(f64, usize, Gate)> = Vec::with_capacity(c.gates.len());
    for (i, g) in c.gates.iter().enumerate() {
        let qs = g.qubits();
        let start = qs.iter().map(|&q| avail[q]).fold(0.0, f64::max);
        for &q in &qs {
            if touched[q] && start > avail[q] {
                windows[q].push((avail[q], start));
            }
            touched[q] = true;
            avail[q] = start + durations.of(g);
        }
        timed.push((start, i, *g));
    }
    let end = avail.iter().copied().fold(0.0, f64::max);
    for q in 0..c.n_qubits {
        if touched[q] && end > avail[q] {
            windows[q].push((avail[q], end));
        }
    }
    let mut seq = c.gates.len();
    for (q, ws) in windows.iter().enumerate() {
        for &(t0, t1) in ws {
            let len = t1 - t0;
            if len + 1e-12 < 2.0 * tx {
                continue;
            }
            let k = 2 * ((len + 1e-12) / (2.0 * tx)).floor() as usize;
            let slot = len / k as f64;
            for j in 0..k {
                let start = t0 + j as f64 * slot + (slot - tx) / 2.0;
                timed.push((start, seq, Gate::X(q)));
                seq += 1;
            }
        }
    }
    timed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Circuit { n_qubits: c.n_qubits, gates: timed.into_iter().map(|t| t.2).collect(), slots: c.slots.clone() })
}

/// Replaces every CNOT by `λ` controlled-phase roots of CZ between
/// Hadamards on the target, each root lowered to two CNOTs and three RZ
/// gates: `2λ` CNOTs and `3λ + 2` single-qubit gates per original CNOT.
pub fn amplify_noise(c: &Circuit, lambda: u32) -> Result<Circuit> {
    if lambda == 0 {
        return Err(Error::InvalidLambda);
    }
    let half = std::f64::consts::PI / lambda as f64 / 2.0;
    let mut out = Circuit { n_qubits: c.n_qubits, gates: Vec::new(), slots: c.slots.clone() };
    for g in &c.gates {
        match *g {
            Gate::CNOT(ctl, tgt) => {
                out.gates.push(Gate::H(tgt));
                for _ in 0..lambda {
                    out.gates.push(Gate::RZ(ctl, Angle::Fixed(half)));
                    out.gates.push(Gate::RZ(tgt, Angle::Fixed(half)));
                    out.gates.push(Gate::CNOT(ctl, tgt));
                    out.gates.push(Gate::RZ(tgt, Angle::Fixed(-half)));
                    out.gates.push(Gate::CNOT(ctl, tgt));
                }
                out.gates.push(Gate::H(tgt));
            }
            other => out.gates.push(other),
        }
    }
    Ok(out)
}

impl Angle {
    fn write(&self, slots: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        match *self {
            Angle::Fixed(a) => write!(f, "{a}"),
            Angle::Param { slot, scale } => {
                let name = &slots[slot];
                if scale == 1.0 {
                    write!(f, "{name}")
                } else if scale == -1.0 {
                    write!(f, "-{name}")
                } else {
                    write!(f, "{scale}*{name}")
                }
            }
        }
    }
}

/// Line-oriented text form: a `# n_qubits:` header, a `# params:` header
/// listing slot names in order, then one gate per line.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# n_qubits: {}", c.n_qubits);
    if !c.slots.is_empty() {
        let _ = writeln!(s, "# params: {}", c.slots.join(" "));
    }
    for g in &c.gates {
        let _ = match *g {
            Gate::SX(q) => writeln!(s, "SX {q}"),
            Gate::X(q) => writeln!(s, "X {q}"),
            Gate::H(q) => writeln!(s, "H {q}"),
            Gate::RZ(q, a) => {
                let _ = write!(s, "RZ {q} ");
                let _ = a.write(&c.slots, &mut s);
                writeln!(s)
            }
            Gate::CNOT(a, b) => writeln!(s, "CNOT {a} {b}"),
            Gate::CP(a, b, phi) => {
                let _ = write!(s, "CP {a} {b} ");
                let _ = phi.write(&c.slots, &mut s);
                writeln!(s)
            }
        };
    }
    s
}

fn is_slot_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_angle(tok: &str, c: &mut Circuit, line: usize) -> Result<Angle> {
    let err = || Error::Parse { line, msg: format!("bad angle `{tok}`") };
    if let Ok(a) = tok.parse::<f64>() {
        return Ok(Angle::Fixed(a));
    }
    let (scale, name) = match tok.split_once('*') {
        Some((s, n)) => (s.parse::<f64>().map_err(|_| err())?, n),
        None => match tok.strip_prefix('-') {
            Some(n) => (-1.0, n),
            None => (1.0, tok),
        },
    };
    if !is_slot_name(name) {
        return Err(err());
    }
    Ok(Angle::Param { slot: c.slot(name), scale })
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut n_qubits: Option<usize> = None;
    let mut pending: Vec<(usize, Vec<String>)> = Vec::new();
    let mut slots: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("n_qubits:") {
                n_qubits = Some(v.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad qubit count `{}`", v.trim()),
                })?);
            } else if let Some(v) = rest.strip_prefix("params:") {
                slots = v.split_whitespace().map(str::to_string).collect();
            }
            continue;
        }
        pending.push((line_no, line.split_whitespace().map(str::to_string).collect()));
    }
    let qubit = |t: &str, line: usize| -> Result<usize> {
        t.parse().map_err(|_| Error::Parse { line, msg: format!("bad qubit `{t}`") })
    };
    let n = match n_qubits {
        Some(n) => n,
        None => {
            let mut max = 0;
            for (line, toks) in &pending {
                let k = match toks.first().map(String::as_str) {
                    Some("RZ") => 1,
                    Some("CP") => 2,
                    _ => toks.len() - 1,
                };
                for t in toks.iter().skip(1).take(k) {
                    max = max.max(qubit(t, *line)? + 1);
                }
            }
            max
        }
    };
    let mut c = Circuit::new(n);
    for s in &slots {
        c.slot(s);
    }
    for (line, toks) in pending {
        let t: Vec<&str> = toks.iter().map(String::as_str).collect();
        let gate = match t.as_slice() {
            ["SX", q] => Gate::SX(qubit(q, line)?),
            ["X", q] => Gate::X(qubit(q, line)?),
            ["H", q] => Gate::H(qubit(q, line)?),
            ["RZ", q, a] => Gate::RZ(qubit(q, line)?, parse_angle(a, &mut c, line)?),
            ["CNOT", a, b] => Gate::CNOT(qubit(a, line)?, qubit(b, line)?),
            ["CP", a, b, phi] => Gate::CP(qubit(a, line)?, qubit(b, line)?, parse_angle(phi, &mut c, line)?),
            _ => return Err(Error::Parse { line, msg: format!("malformed gate `{}`", t.join(" ")) }),
        };
        c.push(gate).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
    }
    c.validate()?;
    Ok(c)
}

impl FromStr for Circuit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_circuit(s)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_circuit(self))
    }
}

/// Gate counts keyed by mnemonic, for reports.
pub fn gate_histogram(c: &Circuit) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for g in &c.gates {
        let k = match g {
            Gate::SX(_) => "SX",
            Gate::X(_) => "X",
            Gate::H(_) => "H",
            Gate::RZ(..) => "RZ",
            Gate::CNOT(..) => "CNOT",
            Gate::CP(..) => "CP",
        };
        *m.entry(k).or_insert(0) += 1;
    }
    m
}
