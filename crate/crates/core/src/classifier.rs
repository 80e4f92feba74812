//! Competitive classification between prototypes.
//!
//! The two-prototype rule compares the corrected distances by ratio:
//! `C = G(sv, fv2) / G(sv, fv1)`, assigning the query to the second prototype
//! when `C ≤ 1` and to the first otherwise. The multi-prototype extension
//! picks the prototype with minimal distance, which agrees with the ratio
//! rule for two prototypes whenever the ratio is not exactly one.

use serde::{Deserialize, Serialize};

use crate::distance::{unified_distance, AggregateMode, DeltaMode};
use crate::distributions::{Prototype, QueryVector};
use crate::error::{Error, Result};

/// Outcome of a classification. `label` indexes the winning prototype in the
/// order the prototypes were supplied; `g_values` holds every prototype's
/// distance in that same order.
///
/// For pair decisions `ratio` is `G(sv, fv2) / G(sv, fv1)`; for
/// multi-prototype decisions it is the runner-up distance over the winner's.
/// A zero winning distance against a nonzero competitor yields an infinite
/// ratio, which serializes to JSON `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub label: usize,
    pub ratio: f64,
    pub g_values: Vec<f64>,
}

fn ratio_of(numerator: f64, denominator: f64) -> f64 {
    if denominator == 0.0 {
        // Both zero means the query sits in both zero-distance bands; treat
        // the contest as a tie.
        if numerator == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        numerator / denominator
    }
}

/// `C = G(sv, fv2) / G(sv, fv1)`.
pub fn competitive_ratio(
    sv: &QueryVector,
    fv1: &Prototype,
    fv2: &Prototype,
    mode: DeltaMode,
    agg: AggregateMode,
) -> Result<f64> {
    let g1 = unified_distance(sv, fv1, mode, agg)?.total;
    let g2 = unified_distance(sv, fv2, mode, agg)?.total;
    Ok(ratio_of(g2, g1))
}

/// The two-prototype rule: `C ≤ 1` assigns the query to `fv2` (label 1),
/// otherwise to `fv1` (label 0).
pub fn classify_pair(
    sv: &QueryVector,
    fv1: &Prototype,
    fv2: &Prototype,
    mode: DeltaMode,
    agg: AggregateMode,
) -> Result<Decision> {
    let g1 = unified_distance(sv, fv1, mode, agg)?.total;
    let g2 = unified_distance(sv, fv2, mode, agg)?.total;
    let ratio = ratio_of(g2, g1);
    let label = if ratio <= 1.0 { 1 } else { 0 };
    Ok(Decision {
        label,
        ratio,
        g_values: vec![g1, g2],
    })
}

/// Assigns the query to the prototype with minimal distance; ties break
/// toward the lowest index. The ratio reported is runner-up over winner.
pub fn classify_multi(
    sv: &QueryVector,
    protos: &[Prototype],
    mode: DeltaMode,
    agg: AggregateMode,
) -> Result<Decision> {
    if protos.is_empty() {
        return Err(Error::NoPrototypes);
    }
    let g_values = protos
        .iter()
        .map(|proto| unified_distance(sv, proto, mode, agg).map(|r| r.total))
        .collect::<Result<Vec<f64>>>()?;

    let mut label = 0;
    for (i, &g) in g_values.iter().enumerate() {
        if g < g_values[label] {
            label = i;
        }
    }
    let runner_up = g_values
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label)
        .map(|(_, &g)| g)
        .fold(f64::INFINITY, f64::min);
    let ratio = if runner_up.is_finite() {
        ratio_of(runner_up, g_values[label])
    } else {
        // Single prototype: no contest.
        1.0
    };
    Ok(Decision {
        label,
        ratio,
        g_values,
    })
}
