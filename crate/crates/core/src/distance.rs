//! The corrected distance between a query point and a prototype.
//!
//! Per coordinate, the raw separation `|sv - center|` is shrunk by a
//! correction `Δ` that measures the expected free travel through the target
//! feature's probability regions:
//!
//! ```text
//! Δ = Σ  width_i · mass_i      over the regions crossed toward the center
//! corrected = max(raw - Δ, 0)
//! ```
//!
//! The result is directional: the correction depends only on the destination
//! prototype's distributions, never on any distribution at the query point,
//! so the distance is a quasi-metric (deliberately asymmetric). Whenever
//! `raw ≤ Δ` the corrected coordinate collapses to zero, so distinct points
//! inside the correction band are at distance zero by design. A degenerate
//! distribution (all widths or all masses zero) contributes no correction and
//! the distance falls back to the Euclidean one.
//!
//! Two conventions are provided for the region the query sits in:
//! [`DeltaMode::Literal`] counts that region's full `width · mass`, while
//! [`DeltaMode::Prorated`] counts only the traversed share of its width,
//! making `Δ` continuous in the query position. The two agree exactly
//! whenever the query sits on a scale boundary.

use serde::{Deserialize, Serialize};

use crate::distributions::{Prototype, QueryVector, Region, ScaledDistribution};
use crate::error::{Error, Result};

/// How the partially traversed region contributes to the correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaMode {
    /// The region containing the query contributes only the traversed share
    /// of its width; the correction is continuous in the query position.
    #[default]
    Prorated,
    /// Every touched region contributes its full `width · mass`.
    Literal,
}

/// How per-coordinate corrected values combine into a total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregateMode {
    /// Root of the sum of squares.
    #[default]
    L2,
    /// Plain sum; reproduces the reference-table totals.
    L1,
}

/// One coordinate of a distance computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordinateBreakdown {
    /// `|query - center|` before any correction.
    pub raw: f64,
    /// The probability-space correction subtracted from `raw`.
    pub delta: f64,
    /// `max(raw - delta, 0)`.
    pub corrected: f64,
    /// Number of regions the query travels through toward the center,
    /// counting the one it sits in.
    pub regions_crossed: usize,
}

/// Per-coordinate breakdowns plus the aggregate total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub per_coordinate: Vec<CoordinateBreakdown>,
    pub total: f64,
    pub aggregate_mode: AggregateMode,
}

/// The correction `Δ` for travel from `query` toward the distribution center.
///
/// Regions on the query's side of the center are consumed innermost-out until
/// the query position is reached; each fully crossed region contributes
/// `width · mass`, the region containing the query contributes per `mode`,
/// and anything beyond the outermost boundary carries mass zero. A query at
/// the center yields zero.
pub fn delta_correction(query: f64, dist: &ScaledDistribution, mode: DeltaMode) -> f64 {
    delta_with_count(query, dist, mode).0
}

/// `delta_correction` plus the number of regions crossed.
pub fn delta_with_count(query: f64, dist: &ScaledDistribution, mode: DeltaMode) -> (f64, usize) {
    if query == dist.center {
        return (0.0, 0);
    }
    let (regions, travel) = if query > dist.center {
        (dist.above.as_slice(), query - dist.center)
    } else {
        (dist.below.as_slice(), dist.center - query)
    };
    traverse(regions, travel, mode)
}

fn traverse(regions: &[Region], travel: f64, mode: DeltaMode) -> (f64, usize) {
    let mut delta = 0.0;
    let mut crossed = 0;
    let mut inner = 0.0;
    for region in regions {
        let outer = inner + region.width;
        if travel > outer {
            delta += region.width * region.mass;
            crossed += 1;
            inner = outer;
        } else {
            // inner < travel <= outer: the region the query sits in.
            crossed += 1;
            delta += match mode {
                DeltaMode::Literal => region.width * region.mass,
                DeltaMode::Prorated => (travel - inner) * region.mass,
            };
            return (delta, crossed);
        }
    }
    // Query beyond the outermost boundary: out-of-support mass is zero.
    (delta, crossed)
}

/// Applies the threshold shrinkage to a single coordinate.
pub fn corrected_coordinate_distance(
    query: f64,
    dist: &ScaledDistribution,
    mode: DeltaMode,
) -> CoordinateBreakdown {
    let raw = (query - dist.center).abs();
    let (delta, regions_crossed) = delta_with_count(query, dist, mode);
    let corrected = if raw <= delta { 0.0 } else { raw - delta };
    CoordinateBreakdown {
        raw,
        delta,
        corrected,
        regions_crossed,
    }
}

/// Combines coordinate values into a total per the aggregate mode.
pub fn aggregate<I>(values: I, agg: AggregateMode) -> f64
where
    I: IntoIterator<Item = f64>,
{
    match agg {
        AggregateMode::L2 => values
            .into_iter()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt(),
        AggregateMode::L1 => values.into_iter().sum(),
    }
}

fn check_dims(query: &QueryVector, proto: &Prototype) -> Result<()> {
    if query.len() != proto.len() {
        return Err(Error::DimensionMismatch {
            query: query.len(),
            prototype: proto.len(),
        });
    }
    Ok(())
}

/// The corrected distance from `query` to `proto`, with per-coordinate
/// breakdowns. Only the prototype's distributions enter the correction.
pub fn unified_distance(
    query: &QueryVector,
    proto: &Prototype,
    mode: DeltaMode,
    agg: AggregateMode,
) -> Result<DistanceReport> {
    check_dims(query, proto)?;
    let per_coordinate: Vec<CoordinateBreakdown> = query
        .coords
        .iter()
        .zip(&proto.features)
        .map(|(&sv, feature)| corrected_coordinate_distance(sv, feature, mode))
        .collect();
    let total = aggregate(per_coordinate.iter().map(|c| c.corrected), agg);
    Ok(DistanceReport {
        per_coordinate,
        total,
        aggregate_mode: agg,
    })
}

/// The uncorrected distance: identical to [`unified_distance`] with every
/// correction forced to zero.
pub fn euclidean_distance(
    query: &QueryVector,
    proto: &Prototype,
    agg: AggregateMode,
) -> Result<f64> {
    check_dims(query, proto)?;
    Ok(aggregate(
        query
            .coords
            .iter()
            .zip(&proto.features)
            .map(|(&sv, feature)| (sv - feature.center).abs()),
        agg,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::Region;

    fn dist_above(center: f64, regions: &[(f64, f64)]) -> ScaledDistribution {
        let above = regions
            .iter()
            .map(|&(w, m)| Region::new(w, m).unwrap())
            .collect();
        ScaledDistribution::new(center, Vec::new(), above).unwrap()
    }

    #[test]
    fn two_regions_fully_crossed() {
        // Innermost (3, 0.2) then (5, 0.3); query at the outer boundary 8.
        let dist = dist_above(0.0, &[(3.0, 0.2), (5.0, 0.3)]);
        let expected = 3.0 * 0.2 + 5.0 * 0.3;
        assert_eq!(delta_correction(8.0, &dist, DeltaMode::Literal), expected);
        assert_eq!(delta_correction(8.0, &dist, DeltaMode::Prorated), expected);
    }

    #[test]
    fn degenerate_distribution_zero_delta() {
        let dist = dist_above(0.0, &[(3.0, 0.0), (5.0, 0.0)]);
        for q in [-10.0, -1.0, 0.5, 4.0, 100.0] {
            assert_eq!(delta_correction(q, &dist, DeltaMode::Literal), 0.0);
            assert_eq!(delta_correction(q, &dist, DeltaMode::Prorated), 0.0);
        }
        let empty = ScaledDistribution::degenerate_at(0.0);
        assert_eq!(delta_correction(42.0, &empty, DeltaMode::Prorated), 0.0);
    }

    #[test]
    fn full_mass_region_collapses_to_center() {
        // Single region width 7 mass 1, query at its outer boundary.
        let dist = dist_above(0.0, &[(7.0, 1.0)]);
        assert_eq!(delta_correction(7.0, &dist, DeltaMode::Literal), 7.0);
        let breakdown = corrected_coordinate_distance(7.0, &dist, DeltaMode::Literal);
        assert_eq!(breakdown.corrected, 0.0);
    }

    #[test]
    fn prorated_halfway_through_region() {
        let dist = dist_above(0.0, &[(4.0, 0.5)]);
        assert_eq!(delta_correction(2.0, &dist, DeltaMode::Prorated), 1.0);
        assert_eq!(delta_correction(2.0, &dist, DeltaMode::Literal), 2.0);
    }

    #[test]
    fn query_at_center_zero() {
        let dist = dist_above(3.0, &[(4.0, 0.5)]);
        let (delta, crossed) = delta_with_count(3.0, &dist, DeltaMode::Literal);
        assert_eq!(delta, 0.0);
        assert_eq!(crossed, 0);
    }

    #[test]
    fn below_side_mirror() {
        let below = vec![Region::new(4.0, 0.5).unwrap()];
        let dist = ScaledDistribution::new(10.0, below, Vec::new()).unwrap();
        assert_eq!(delta_correction(8.0, &dist, DeltaMode::Prorated), 1.0);
        // Above side has no regions: pure Euclidean there.
        assert_eq!(delta_correction(12.0, &dist, DeltaMode::Prorated), 0.0);
    }

    #[test]
    fn regions_crossed_counts_and_caps() {
        let dist = dist_above(0.0, &[(1.0, 0.1), (1.0, 0.1), (1.0, 0.1)]);
        let at = |q: f64| delta_with_count(q, &dist, DeltaMode::Prorated).1;
        assert_eq!(at(0.5), 1);
        assert_eq!(at(1.0), 1);
        assert_eq!(at(1.5), 2);
        assert_eq!(at(3.0), 3);
        assert_eq!(at(50.0), 3); // beyond the support: capped at the side's count
    }

    #[test]
    fn shrinkage_branches() {
        let band = dist_above(0.0, &[(15.0, 1.0)]);
        let b = corrected_coordinate_distance(10.0, &band, DeltaMode::Literal);
        assert_eq!(b.raw, 10.0);
        assert_eq!(b.delta, 15.0);
        assert_eq!(b.corrected, 0.0);

        let b = corrected_coordinate_distance(20.0, &band, DeltaMode::Literal);
        assert_eq!(b.corrected, 5.0);

        let plain = ScaledDistribution::degenerate_at(0.0);
        let b = corrected_coordinate_distance(20.0, &plain, DeltaMode::Literal);
        assert_eq!(b.corrected, b.raw);
    }

    fn degenerate_proto(centers: &[f64]) -> Prototype {
        Prototype::new(
            centers
                .iter()
                .map(|&c| ScaledDistribution::degenerate_at(c))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn totals_by_aggregate_mode() {
        // Corrected values engineered to (3, 4) on a degenerate prototype.
        let proto = degenerate_proto(&[0.0, 0.0]);
        let query = QueryVector::new(vec![3.0, 4.0]);
        let l2 = unified_distance(&query, &proto, DeltaMode::Prorated, AggregateMode::L2).unwrap();
        assert_eq!(l2.total, 5.0);
        let l1 = unified_distance(&query, &proto, DeltaMode::Prorated, AggregateMode::L1).unwrap();
        assert_eq!(l1.total, 7.0);
    }

    #[test]
    fn query_at_centers_zero_total() {
        let proto = degenerate_proto(&[1.0, -2.0, 3.5]);
        let query = QueryVector::new(vec![1.0, -2.0, 3.5]);
        let report =
            unified_distance(&query, &proto, DeltaMode::Prorated, AggregateMode::L2).unwrap();
        assert_eq!(report.total, 0.0);
        assert_eq!(
            euclidean_distance(&query, &proto, AggregateMode::L2).unwrap(),
            0.0
        );
    }

    #[test]
    fn euclidean_hand_value() {
        let proto = degenerate_proto(&[3.0, 4.0]);
        let query = QueryVector::new(vec![0.0, 0.0]);
        assert_eq!(
            euclidean_distance(&query, &proto, AggregateMode::L2).unwrap(),
            5.0
        );
    }

    #[test]
    fn dimension_mismatch_errors() {
        let proto = degenerate_proto(&[0.0, 0.0]);
        let query = QueryVector::new(vec![1.0]);
        assert!(matches!(
            unified_distance(&query, &proto, DeltaMode::Prorated, AggregateMode::L2),
            Err(Error::DimensionMismatch { query: 1, prototype: 2 })
        ));
        assert!(euclidean_distance(&query, &proto, AggregateMode::L2).is_err());
    }

    #[test]
    fn zero_distance_band_is_positive_behavior() {
        // Distinct points at corrected distance zero: the band is intended.
        let dist = dist_above(0.0, &[(10.0, 1.0)]);
        let proto = Prototype::new(vec![dist]).unwrap();
        let query = QueryVector::new(vec![5.0]);
        for mode in [DeltaMode::Prorated, DeltaMode::Literal] {
            let report = unified_distance(&query, &proto, mode, AggregateMode::L2).unwrap();
            assert_eq!(report.total, 0.0, "query inside the band, mode {mode:?}");
        }
        assert!(euclidean_distance(&query, &proto, AggregateMode::L2).unwrap() > 0.0);
    }

    #[test]
    fn direction_contract_uses_target_distribution_only() {
        // W at 0 with a heavy region, V degenerate at 10.
        let w = dist_above(0.0, &[(4.0, 1.0)]);
        let v = ScaledDistribution::degenerate_at(10.0);
        let toward_v = unified_distance(
            &QueryVector::new(vec![w.center]),
            &Prototype::new(vec![v.clone()]).unwrap(),
            DeltaMode::Literal,
            AggregateMode::L2,
        )
        .unwrap();
        let toward_w = unified_distance(
            &QueryVector::new(vec![v.center]),
            &Prototype::new(vec![w]).unwrap(),
            DeltaMode::Literal,
            AggregateMode::L2,
        )
        .unwrap();
        assert_eq!(toward_v.total, 10.0);
        assert_eq!(toward_w.total, 6.0);
        assert_ne!(toward_v.total, toward_w.total);
    }
}
