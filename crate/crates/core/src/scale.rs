//! The standard n×n scales on `[n] = {1, ..., n}`.

use std::fmt;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScaleKind {
    /// Incidence `g ≤ m`.
    Ordinal,
    /// Incidence `g = m`.
    Nominal,
    /// Incidence `g ≠ m`.
    Contranominal,
}

impl ScaleKind {
    pub const ALL: [ScaleKind; 3] = [ScaleKind::Ordinal, ScaleKind::Nominal, ScaleKind::Contranominal];

    fn relates(self, g: usize, m: usize) -> bool {
        match self {
            ScaleKind::Ordinal => g <= m,
            ScaleKind::Nominal => g == m,
            ScaleKind::Contranominal => g != m,
        }
    }
}

impl fmt::Display for ScaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleKind::Ordinal => "ordinal",
            ScaleKind::Nominal => "nominal",
            ScaleKind::Contranominal => "contranominal",
        })
    }
}

impl FromStr for ScaleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ordinal" => Ok(ScaleKind::Ordinal),
            "nominal" => Ok(ScaleKind::Nominal),
            "contranominal" => Ok(ScaleKind::Contranominal),
            other => Err(format!("unknown scale kind {other:?}")),
        }
    }
}

/// Builds the scale context of the given kind with objects and attributes
/// named `1..=n`.
pub fn make_scale(kind: ScaleKind, n: usize) -> Result<FormalContext> {
    if n == 0 {
        return Err(Error::EmptyScale);
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let rows = (0..n)
        .map(|g| BitSet::from_indices(n, (0..n).filter(|&m| kind.relates(g, m))))
        .collect();
    Ok(FormalContext::new(names.clone(), names, rows)?.with_name(format!("{kind}-{n}")))
}
