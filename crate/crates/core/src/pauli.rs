//! Pauli words in symplectic form, real-weighted Pauli sums and qubit-wise
//! commuting clique covers.
//!
//! Labels are written with the highest qubit on the left: in `"XIZ"` qubit 2
//! carries `X` and qubit 0 carries `Z`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest register a [`PauliString`] can address.
pub const MAX_PAULI_QUBITS: usize = 64;

/// Coefficients with magnitude at or below this are dropped from sums.
pub const PRUNE_TOLERANCE: f64 = 1e-12;

/// Fourth root of unity stored as a power of `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    #[default]
    PlusOne = 0,
    PlusI = 1,
    MinusOne = 2,
    MinusI = 3,
}

impl Phase {
    pub fn from_power(k: u8) -> Self {
        match k & 3 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    #[inline]
    pub fn power(self) -> u8 {
        self as u8
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::PlusOne | Phase::MinusOne)
    }

    fn label(self) -> &'static str {
        match self {
            Phase::PlusOne => "+1",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-1",
            Phase::MinusI => "-i",
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_power(self.power() + rhs.power())
    }
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// A Pauli word `phase · σ_{n-1} ⊗ … ⊗ σ_0` in two-bit-vector encoding.
///
/// Bit `k` of `x`/`z` describes qubit `k`; `(x, z) = (1, 1)` is `Y` itself,
/// not `XZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
    #[serde(skip)]
    phase: Phase,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::from_bits(n_qubits, 0, 0)
    }

    pub fn from_bits(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_PAULI_QUBITS {
            return Err(Error::TooManyQubits { n: n_qubits, max: MAX_PAULI_QUBITS });
        }
        let mask = mask(n_qubits);
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::InvalidPauli(format!("bits outside {n_qubits} qubits")));
        }
        Ok(Self { n_qubits, x, z, phase: Phase::PlusOne })
    }

    /// Builds a word from `(qubit, letter)` pairs; unnamed qubits are `I`.
    pub fn from_sparse(n_qubits: usize, letters: &[(usize, Letter)]) -> Result<Self> {
        let mut x = 0u64;
        let mut z = 0u64;
        for &(q, l) in letters {
            if q >= n_qubits {
                return Err(Error::InvalidQubit { qubit: q, n_qubits });
            }
            let (bx, bz) = l.bits();
            x |= (bx as u64) << q;
            z |= (bz as u64) << q;
        }
        Self::from_bits(n_qubits, x, z)
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// Same word with phase `+1`.
    pub fn phase_free(mut self) -> Self {
        self.phase = Phase::PlusOne;
        self
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn x_bits(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_bits(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    /// Mask of qubits carrying a non-identity letter.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    /// Qubits with a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits).filter(|&q| (self.support_mask() >> q) & 1 == 1).collect()
    }

    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.support_mask() == 0
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(())
    }

    /// Exact operator product `self · other`, phase included.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        let y1 = x1 & z1;
        let xo = x1 & !z1;
        let zo = !x1 & z1;
        // σ_a σ_b = i^g σ_{a⊕b}, accumulated letterwise.
        let pos = (y1 & z2 & !x2).count_ones()
            + (xo & z2 & x2).count_ones()
            + (zo & x2 & !z2).count_ones();
        let neg = (y1 & x2 & !z2).count_ones()
            + (xo & z2 & !x2).count_ones()
            + (zo & x2 & z2).count_ones();
        let g = (pos as i64 - neg as i64).rem_euclid(4) as u8;
        Ok(Self {
            n_qubits: self.n_qubits,
            x: x1 ^ x2,
            z: z1 ^ z2,
            phase: Phase::from_power(self.phase.power() + other.phase.power() + g),
        })
    }

    /// Full commutation: an even number of anticommuting sites.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.symplectic_product(other) == 0)
    }

    #[inline]
    fn symplectic_product(&self, other: &Self) -> u32 {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() & 1
    }

    /// Letterwise commutation: at every qubit the letters agree or one is `I`.
    pub fn qubitwise_commutes(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        let both = self.support_mask() & other.support_mask();
        Ok(((self.x ^ other.x) | (self.z ^ other.z)) & both == 0)
    }

    /// Label without phase, highest qubit first.
    pub fn label(&self) -> String {
        (0..self.n_qubits).rev().map(|q| self.letter(q).as_char()).collect()
    }
}

#[inline]
fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for PauliString {
    /// Lexicographic order of the labels (`I < X < Y < Z`), then phase.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qubits
            .cmp(&other.n_qubits)
            .then_with(|| {
                for q in (0..self.n_qubits).rev() {
                    match self.letter(q).cmp(&other.letter(q)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != Phase::PlusOne {
            write!(f, "({})", self.phase.label())?;
        }
        f.write_str(&self.label())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses a bare label such as `"ZZZYY"`.
    fn from_str(s: &str) -> Result<Self> {
        let n = s.len();
        if n == 0 || n > MAX_PAULI_QUBITS {
            return Err(Error::InvalidPauli(s.to_string()));
        }
        let mut x = 0u64;
        let mut z = 0u64;
        for (i, c) in s.chars().enumerate() {
            let q = n - 1 - i;
            let (bx, bz) = match c {
                'I' => (0, 0),
                'X' => (1, 0),
                'Y' => (1, 1),
                'Z' => (0, 1),
                _ => return Err(Error::InvalidPauli(s.to_string())),
            };
            x |= bx << q;
            z |= bz << q;
        }
        Self::from_bits(n, x, z)
    }
}

impl TryFrom<String> for PauliString {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PauliString> for String {
    fn from(p: PauliString) -> String {
        p.label()
    }
}

/// Real linear combination of phase-free Pauli words.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum<T> {
    n_qubits: usize,
    terms: BTreeMap<PauliString, T>,
}

impl<T: Real> PauliSum<T> {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, T)>,
    {
        let mut sum = Self::new(n_qubits);
        for (p, c) in terms {
            sum.add_term(p, c)?;
        }
        Ok(sum)
    }

    /// Adds `coeff · p`, folding a real phase of `p` into the coefficient.
    pub fn add_term(&mut self, p: PauliString, coeff: T) -> Result<()> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::SizeMismatch { left: self.n_qubits, right: p.n_qubits() });
        }
        let coeff = match p.phase() {
            Phase::PlusOne => coeff,
            Phase::MinusOne => -coeff,
            ph => return Err(Error::NonHermitian(ph.label())),
        };
        let key = p.phase_free();
        let entry = self.terms.entry(key).or_insert_with(T::zero);
        *entry += coeff;
        if entry.abs() <= T::lit(PRUNE_TOLERANCE) {
            self.terms.remove(&key);
        }
        Ok(())
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic label order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> T {
        self.terms.get(&p.phase_free()).copied().unwrap_or_else(T::zero)
    }

    pub fn identity_coefficient(&self) -> T {
        PauliString::identity(self.n_qubits).map(|id| self.coefficient(&id)).unwrap_or_else(|_| T::zero())
    }

    pub fn scaled(&self, factor: T) -> Self {
        let mut out = Self::new(self.n_qubits);
        for (p, &c) in &self.terms {
            let _ = out.add_term(*p, c * factor);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (p, &c) in &other.terms {
            out.add_term(*p, c)?;
        }
        Ok(out)
    }

    /// `i[H, P]`, which is Hermitian and hence real-weighted.
    ///
    /// Only anticommuting terms survive, each contributing `2i·Q·P`.
    pub fn commutator(&self, p: &PauliString) -> Result<Self> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::SizeMismatch { left: self.n_qubits, right: p.n_qubits() });
        }
        let p = p.phase_free();
        let mut out = Self::new(self.n_qubits);
        for (q, &c) in &self.terms {
            if q.commutes(&p)? {
                continue;
            }
            let prod = q.multiply(&p)?;
            // 2i · i^k with k odd for anticommuting Hermitian words.
            let sign = match Phase::from_power(prod.phase().power() + 1) {
                Phase::PlusOne => T::one(),
                Phase::MinusOne => -T::one(),
                _ => unreachable!("anticommuting product has imaginary phase"),
            };
            out.add_term(prod.phase_free(), sign * T::lit(2.0) * c)?;
        }
        Ok(out)
    }

    /// Sum without its identity component.
    pub fn without_identity(&self) -> Self {
        let mut out = self.clone();
        out.terms.retain(|p, _| !p.is_identity());
        out
    }
}

/// Commutator `i[h, p]` of a Pauli sum with a Pauli word.
pub fn commutator<T: Real>(h: &PauliSum<T>, p: &PauliString) -> Result<PauliSum<T>> {
    h.commutator(p)
}

/// Partition of a Pauli sum into qubit-wise commuting groups plus identity.
#[derive(Clone, Debug, PartialEq)]
pub struct QwcCliqueCover<T> {
    pub identity_coeff: T,
    pub cliques: Vec<PauliSum<T>>,
}

impl<T: Real> QwcCliqueCover<T> {
    pub fn n_qubits(&self) -> Option<usize> {
        self.cliques.first().map(PauliSum::n_qubits)
    }

    /// Checks pairwise QWC inside every clique and that no term repeats.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        let n = self.n_qubits();
        for clique in &self.cliques {
            if Some(clique.n_qubits()) != n {
                return Err(Error::SizeMismatch { left: n.unwrap_or(0), right: clique.n_qubits() });
            }
            if !clique_is_qwc(clique)? {
                return Err(Error::NotQubitwiseCommuting);
            }
            for (p, _) in clique.iter() {
                if p.is_identity() || !seen.insert(*p) {
                    return Err(Error::InvalidPauli(format!("{p} repeated or identity inside a clique")));
                }
            }
        }
        Ok(())
    }

    /// Recombines the cover into a single sum.
    pub fn to_pauli_sum(&self, n_qubits: usize) -> Result<PauliSum<T>> {
        let mut sum = PauliSum::new(n_qubits);
        sum.add_term(PauliString::identity(n_qubits)?, self.identity_coeff)?;
        for clique in &self.cliques {
            sum = sum.add(clique)?;
        }
        Ok(sum)
    }

    pub fn term_count(&self) -> usize {
        self.cliques.iter().map(PauliSum::len).sum()
    }
}

pub fn clique_is_qwc<T: Real>(clique: &PauliSum<T>) -> Result<bool> {
    let terms: Vec<_> = clique.iter().map(|(p, _)| *p).collect();
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            if !a.qubitwise_commutes(b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Greedy QWC grouping, largest |coefficient| first, ties by label.
///
/// Each term joins the first clique it qubit-wise commutes with entirely;
/// otherwise it opens a new clique.
pub fn greedy_qwc_cover<T: Real>(h: &PauliSum<T>) -> QwcCliqueCover<T> {
    let mut order: Vec<(PauliString, T)> =
        h.iter().filter(|(p, _)| !p.is_identity()).map(|(p, &c)| (*p, c)).collect();
    order.sort_by(|(pa, ca), (pb, cb)| {
        cb.abs().partial_cmp(&ca.abs()).unwrap_or(Ordering::Equal).then_with(|| pa.cmp(pb))
    });
    let mut groups: Vec<Vec<(PauliString, T)>> = Vec::new();
    for (p, c) in order {
        let slot = groups.iter_mut().find(|g| {
            g.iter().all(|(q, _)| p.qubitwise_commutes(q).unwrap_or(false))
        });
        match slot {
            Some(g) => g.push((p, c)),
            None => groups.push(vec![(p, c)]),
        }
    }
    let cliques = groups
        .into_iter()
        .map(|g| PauliSum::from_terms(h.n_qubits(), g).expect("same register"))
        .collect();
    QwcCliqueCover { identity_coeff: h.identity_coefficient(), cliques }
}
