//! Context entropies driven by the object closure sizes `|g''|`.
//!
//! * Shannon object entropy: `Σ_g −p_g log₂ p_g` with `p_g = |g''| / |G|`.
//! * Object entropy: `(1/|G|) Σ_g (1 − p_g)`.
//!
//! The Shannon form is returned unnormalized by default. Dividing by `|G|`
//! gives the per-object value; ratios of the two forms over the same object
//! set are identical, so entropic relevance scores do not depend on the
//! choice. Sums run in object order in plain double precision.

use std::fmt;
use std::str::FromStr;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::scale::ScaleKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntropyKind {
    /// Shannon object information entropy (SE).
    ShannonObject,
    /// Object information entropy (OE).
    Object,
}

impl fmt::Display for EntropyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyKind::ShannonObject => "se",
            EntropyKind::Object => "oe",
        })
    }
}

impl FromStr for EntropyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "se" | "shannon" => Ok(EntropyKind::ShannonObject),
            "oe" | "object" => Ok(EntropyKind::Object),
            other => Err(format!("unknown entropy kind {other:?} (expected se or oe)")),
        }
    }
}

/// `|g''|` for every object, in object order.
pub fn object_closure_sizes(ctx: &FormalContext) -> Vec<usize> {
    (0..ctx.object_count()).map(|g| ctx.object_closure(g).len()).collect()
}

/// `−p log₂ p`, with `0 log 0 = 0`.
fn surprisal_term(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

fn shannon_from_sizes(sizes: &[usize], objects: usize) -> f64 {
    let n = objects as f64;
    sizes.iter().map(|&s| surprisal_term(s as f64 / n)).sum()
}

/// `|G|² − Σ_g |g''|`, the object entropy scaled by `|G|²` as an exact integer.
pub(crate) fn object_entropy_numerator(sizes: &[usize], objects: usize) -> u64 {
    let n = objects as u64;
    n * n - sizes.iter().map(|&s| s as u64).sum::<u64>()
}

pub fn shannon_object_entropy(ctx: &FormalContext, normalized: bool) -> Result<f64> {
    let objects = ctx.object_count();
    if objects == 0 {
        return Err(Error::EmptyObjectSet);
    }
    let value = shannon_from_sizes(&object_closure_sizes(ctx), objects);
    Ok(if normalized { value / objects as f64 } else { value })
}

pub fn object_entropy(ctx: &FormalContext) -> Result<f64> {
    let objects = ctx.object_count();
    if objects == 0 {
        return Err(Error::EmptyObjectSet);
    }
    let numerator = object_entropy_numerator(&object_closure_sizes(ctx), objects);
    Ok(numerator as f64 / (objects * objects) as f64)
}

/// The entropy of the given kind; Shannon entropy unnormalized.
pub fn entropy(ctx: &FormalContext, kind: EntropyKind) -> Result<f64> {
    match kind {
        EntropyKind::ShannonObject => shannon_object_entropy(ctx, false),
        EntropyKind::Object => object_entropy(ctx),
    }
}

/// Closed forms of both entropies on the standard scales.
///
/// In the ordinal scale the closure sizes are `1, ..., n`; in the nominal and
/// contranominal scales every object closure is the object itself.
pub fn scale_entropy(kind: ScaleKind, n: usize, which: EntropyKind) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptyScale);
    }
    let nf = n as f64;
    Ok(match (kind, which) {
        (ScaleKind::Ordinal, EntropyKind::ShannonObject) => (1..=n).map(|i| surprisal_term(i as f64 / nf)).sum(),
        // (1/n) Σ_{i=1..n} (1 − i/n)
        (ScaleKind::Ordinal, EntropyKind::Object) => (nf - 1.0) / (2.0 * nf),
        (_, EntropyKind::ShannonObject) => nf.log2(),
        (_, EntropyKind::Object) => (nf - 1.0) / nf,
    })
}
