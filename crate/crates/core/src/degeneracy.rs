//! Erf-based degeneracy score for energy-level gaps, and a scan over a
//! bond-length sweep.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `(√π/2)·erf(δx)/(δx)`: 1 at zero gap, falling towards 0 as `|δx|` grows.
pub fn degeneracy_score<T: Real>(gap: T, delta: T) -> Result<T> {
    if !(delta > T::zero()) {
        return Err(Error::InvalidDelta);
    }
    let z = (delta * gap).abs();
    if z < T::lit(1e-8) {
        return Ok(T::one() - z * z / T::lit(3.0));
    }
    Ok(T::PI().sqrt() / T::lit(2.0) * z.erf() / z)
}

/// Energy levels at one geometry, ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSet {
    pub bond_length: f64,
    pub levels: Vec<f64>,
}

impl LevelSet {
    /// Sorts the levels; rejects non-finite entries.
    pub fn new(bond_length: f64, mut levels: Vec<f64>) -> Result<Self> {
        if !bond_length.is_finite() || levels.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidConfig("levels and bond length must be finite".into()));
        }
        levels.sort_by(f64::total_cmp);
        Ok(Self { bond_length, levels })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Degeneracy {
    pub bond_length: f64,
    /// Indices of the lower and upper level in the sorted list.
    pub lower: usize,
    pub upper: usize,
    pub gap: f64,
    pub score: f64,
}

/// Adjacent level pairs scoring at least `threshold`, ordered by bond
/// length then gap.
pub fn scan_degeneracies(sweep: &[LevelSet], delta: f64, threshold: f64) -> Result<Vec<Degeneracy>> {
    if sweep.is_empty() {
        return Err(Error::InvalidConfig("empty sweep".into()));
    }
    let mut out = Vec::new();
    for set in sweep {
        for (i, w) in set.levels.windows(2).enumerate() {
            let gap = w[1] - w[0];
            let score = degeneracy_score(gap, delta)?;
            if score >= threshold {
                out.push(Degeneracy { bond_length: set.bond_length, lower: i, upper: i + 1, gap, score });
            }
        }
    }
    out.sort_by(|a, b| {
        a.bond_length.total_cmp(&b.bond_length).then(a.gap.total_cmp(&b.gap)).then(a.lower.cmp(&b.lower))
    });
    Ok(out)
}

/// Parses `bond_length, e0, e1, ...` lines. Blank lines and `#` comments
/// are skipped, as is a first line whose first field is not numeric.
pub fn parse_levels_csv(text: &str) -> Result<Vec<LevelSet>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if out.is_empty() && fields[0].parse::<f64>().is_err() => continue,
            Err(_) => return Err(Error::Parse { line: idx + 1, msg: format!("non-numeric field in `{line}`") }),
        };
        if values.len() < 2 {
            return Err(Error::Parse { line: idx + 1, msg: "need a bond length and at least one level".into() });
        }
        out.push(
            LevelSet::new(values[0], values[1..].to_vec())
                .map_err(|e| Error::Parse { line: idx + 1, msg: e.to_string() })?,
        );
    }
    Ok(out)
}

pub fn degeneracies_csv(rows: &[Degeneracy]) -> String {
    let mut s = String::from("bond_length,lower,upper,gap,score\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{}", r.bond_length, r.lower, r.upper, r.gap, r.score);
    }
    s
}
