//! Text format for clique-grouped Hamiltonians and the bundled N₂ set.
//!
//! ```text
//! # bond_length_angstrom: 0.80
//! # n_qubits: 5
//! [identity] -103.58363
//! [clique 0]
//! +0.14413 IIIIZ
//! ```
//!
//! Blank lines and other `#` comments are ignored. Cliques must appear in
//! index order starting from 0.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pauli::{clique_is_qwc, PauliString, PauliSum, QwcCliqueCover};
use crate::scalar::Real;

/// A Hamiltonian with its measurement grouping and optional geometry tag.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledHamiltonian<T> {
    pub bond_length: Option<f64>,
    pub n_qubits: usize,
    pub cover: QwcCliqueCover<T>,
}

impl<T: Real> LabeledHamiltonian<T> {
    /// The full operator including the identity term.
    pub fn hamiltonian(&self) -> PauliSum<T> {
        self.cover.to_pauli_sum(self.n_qubits).expect("cover validated at construction")
    }
}

/// Identifiers of the bundled Hamiltonians, ordered by bond length.
pub const BUNDLED_IDS: [&str; 10] = ["h0", "h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8", "h9"];

const BUNDLED_TEXT: [&str; 10] = [
    include_str!("../data/n2/h0.ham"),
    include_str!("../data/n2/h1.ham"),
    include_str!("../data/n2/h2.ham"),
    include_str!("../data/n2/h3.ham"),
    include_str!("../data/n2/h4.ham"),
    include_str!("../data/n2/h5.ham"),
    include_str!("../data/n2/h6.ham"),
    include_str!("../data/n2/h7.ham"),
    include_str!("../data/n2/h8.ham"),
    include_str!("../data/n2/h9.ham"),
];

/// Raw file contents of a bundled Hamiltonian.
pub fn bundled_text(id: &str) -> Option<&'static str> {
    BUNDLED_IDS.iter().position(|&b| b == id).map(|i| BUNDLED_TEXT[i])
}

/// Parses a bundled Hamiltonian by id (`h0` … `h9`).
pub fn bundled<T: Real>(id: &str) -> Result<LabeledHamiltonian<T>> {
    let text = bundled_text(id).ok_or_else(|| Error::InvalidConfig(format!("unknown bundled Hamiltonian `{id}`")))?;
    parse_hamiltonian(text)
}

/// Reference determinant (basis index) used for a bond length in Å.
///
/// Two occupied qubits (4 and 3) up to 1.20 Å, one (qubit 4) below 2.00 Å,
/// and the empty register from 2.00 Å on.
pub fn reference_state(bond_length: f64) -> u64 {
    const EPS: f64 = 1e-9;
    if bond_length <= 1.2 + EPS {
        0b11000
    } else if bond_length < 2.0 - EPS {
        0b10000
    } else {
        0
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn header_value<'a>(comment: &'a str, key: &str) -> Option<&'a str> {
    let rest = comment.trim_start_matches('#').trim();
    rest.strip_prefix(key)?.trim_start().strip_prefix(':').map(str::trim)
}

pub fn parse_hamiltonian<T: Real>(text: &str) -> Result<LabeledHamiltonian<T>> {
    let mut bond_length = None;
    let mut declared_n: Option<(usize, usize)> = None;
    let mut identity: Option<T> = None;
    let mut n_qubits: Option<usize> = None;
    // (header line, terms) per clique.
    let mut cliques: Vec<(usize, Vec<(usize, PauliString, T)>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(v) = header_value(line, "bond_length_angstrom") {
                let x: f64 = v.parse().map_err(|_| parse_err(line_no, format!("bad bond length `{v}`")))?;
                bond_length = Some(x);
            } else if let Some(v) = header_value(line, "n_qubits") {
                let n: usize = v.parse().map_err(|_| parse_err(line_no, format!("bad qubit count `{v}`")))?;
                declared_n = Some((n, line_no));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("[identity]") {
            if identity.is_some() {
                return Err(parse_err(line_no, "duplicate identity term"));
            }
            let v = rest.trim();
            identity = Some(v.parse().map_err(|_| parse_err(line_no, format!("bad identity coefficient `{v}`")))?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("[clique") {
            let body = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line_no, "unterminated clique header"))?
                .trim();
            let k: usize = body.parse().map_err(|_| parse_err(line_no, format!("bad clique index `{body}`")))?;
            if k < cliques.len() {
                return Err(parse_err(line_no, format!("duplicate clique index {k}")));
            }
            if k != cliques.len() {
                return Err(parse_err(line_no, format!("clique index {k} out of sequence (expected {})", cliques.len())));
            }
            cliques.push((line_no, Vec::new()));
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(c), Some(word), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_err(line_no, format!("malformed term `{line}`")));
        };
        let coeff: T = c.parse().map_err(|_| parse_err(line_no, format!("bad coefficient `{c}`")))?;
        let p: PauliString = word.parse().map_err(|_| parse_err(line_no, format!("bad Pauli word `{word}`")))?;
        match n_qubits {
            None => n_qubits = Some(p.n_qubits()),
            Some(n) if n != p.n_qubits() => {
                return Err(parse_err(line_no, format!("word `{word}` has length {} but expected {n}", p.n_qubits())))
            }
            _ => {}
        }
        if p.is_identity() {
            return Err(parse_err(line_no, "identity term inside a clique"));
        }
        let clique = cliques.last_mut().ok_or_else(|| parse_err(line_no, "term before any clique header"))?;
        clique.1.push((line_no, p, coeff));
    }

    let n = match (n_qubits, declared_n) {
        (Some(n), Some((d, line))) if n != d => {
            return Err(parse_err(line, format!("declared {d} qubits but terms have {n}")));
        }
        (Some(n), _) => n,
        (None, Some((d, _))) => d,
        (None, None) => return Err(parse_err(text.lines().count().max(1), "no qubit count and no terms")),
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(cliques.len());
    for (header, terms) in cliques {
        if terms.is_empty() {
            return Err(parse_err(header, "empty clique"));
        }
        let mut sum = PauliSum::new(n);
        for (line_no, p, c) in terms {
            if !seen.insert(p) {
                return Err(parse_err(line_no, format!("duplicate term {p}")));
            }
            sum.add_term(p, c).map_err(|e| parse_err(line_no, e.to_string()))?;
        }
        if !clique_is_qwc(&sum)? {
            return Err(parse_err(header, "clique members do not qubit-wise commute"));
        }
        out.push(sum);
    }
    Ok(LabeledHamiltonian {
        bond_length,
        n_qubits: n,
        cover: QwcCliqueCover { identity_coeff: identity.unwrap_or_else(T::zero), cliques: out },
    })
}

/// Canonical text form: fixed header order, terms sorted by label, signed
/// shortest round-trip coefficients.
pub fn serialize_hamiltonian<T: Real>(h: &LabeledHamiltonian<T>) -> String {
    let mut s = String::new();
    if let Some(x) = h.bond_length {
        let _ = writeln!(s, "# bond_length_angstrom: {x:.2}");
    }
    let _ = writeln!(s, "# n_qubits: {}", h.n_qubits);
    let _ = writeln!(s, "[identity] {}", h.cover.identity_coeff);
    for (k, clique) in h.cover.cliques.iter().enumerate() {
        let _ = writeln!(s, "[clique {k}]");
        for (p, c) in clique.iter() {
            if *c < T::zero() {
                let _ = writeln!(s, "{c} {p}");
            } else {
                let _ = writeln!(s, "+{c} {p}");
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_last_clique_of_h0() {
        let h = bundled::<f64>("h0").unwrap();
        assert_eq!(h.cover.identity_coeff, -103.58363);
        assert_eq!(h.bond_length, Some(0.80));
        let last = &h.cover.cliques[7];
        assert_eq!(last.len(), 1);
        assert_eq!(last.coefficient(&"ZZZYY".parse().unwrap()), 0.08035);
    }

    #[test]
    fn empty_clique_rejected() {
        let err = parse_hamiltonian::<f64>("[identity] 1.0\n[clique 0]\n[clique 1]\n+1.0 Z\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let dup = "[clique 0]\n+1.0 ZI\n[clique 0]\n+1.0 IZ\n";
        assert!(matches!(parse_hamiltonian::<f64>(dup), Err(Error::Parse { line: 3, .. })));
        let len = "[clique 0]\n+1.0 ZI\n+1.0 ZZZ\n";
        assert!(matches!(parse_hamiltonian::<f64>(len), Err(Error::Parse { line: 3, .. })));
        let bad = "[clique 0]\n+1.0\n";
        assert!(matches!(parse_hamiltonian::<f64>(bad), Err(Error::Parse { line: 2, .. })));
        let qwc = "[clique 0]\n+1.0 X\n+1.0 Z\n";
        assert!(matches!(parse_hamiltonian::<f64>(qwc), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn single_term_serializes_to_one_clique_line() {
        let h = parse_hamiltonian::<f64>("[identity] 0.5\n[clique 0]\n-0.25 XZ\n").unwrap();
        let text = serialize_hamiltonian(&h);
        assert_eq!(text, "# n_qubits: 2\n[identity] 0.5\n[clique 0]\n-0.25 XZ\n");
        assert_eq!(parse_hamiltonian::<f64>(&text).unwrap(), h);
    }

    #[test]
    fn reference_states_by_geometry() {
        assert_eq!(reference_state(0.80), 24);
        assert_eq!(reference_state(1.20), 24);
        assert_eq!(reference_state(1.33), 16);
        assert_eq!(reference_state(1.87), 16);
        assert_eq!(reference_state(2.00), 0);
    }
}
