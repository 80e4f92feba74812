//! Embedded reference tables and their replication checks.
//!
//! Three published pattern-recognition examples are embedded verbatim: for
//! each, twenty per-coordinate Euclidean distances and twenty corrected
//! probability distances against two candidate prototypes, plus the published
//! totals, ratios and the true class. [`replicate_totals`] recomputes the
//! totals as plain sums (the published totals are verifiably plain sums, not
//! root-sum-of-squares) and flags any disagreement with the published values
//! rather than patching it: the reference data is internally inconsistent in
//! exactly two total cells, and the checks pin both down.

use serde::{Deserialize, Serialize};

use crate::distance::{aggregate, AggregateMode};

/// Which prototype a reference example truly belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealMode {
    Fv1,
    Fv2,
}

/// One embedded reference example: four rows of twenty per-coordinate
/// distances and the ground-truth class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceExample {
    pub id: u8,
    pub fv1_e: Vec<f64>,
    pub fv1_pr: Vec<f64>,
    pub fv2_e: Vec<f64>,
    pub fv2_pr: Vec<f64>,
    pub real_mode: RealMode,
}

/// A cell where a corrected distance exceeds its paired raw distance.
/// `index` is the zero-based position within the twenty-entry rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawExceedance {
    pub example_id: u8,
    pub vector: RealMode,
    pub index: usize,
    }

impl ReferenceExample {
    /// Cells where the corrected distance exceeds the raw one. Corrected
    /// values can never exceed raw ones, so any hit marks a transcription
    /// anomaly in the source data. Exactly one exists across all three
    /// examples; see [`KNOWN_EXCEEDANCE`].
    pub fn raw_exceedances(&self) -> Vec<RawExceedance> {
        let mut out = Vec::new();
        let pairs = [
            (RealMode::Fv1, &self.fv1_e, &self.fv1_pr),
            (RealMode::Fv2, &self.fv2_e, &self.fv2_pr),
        ];
        for (vector, e, pr) in pairs {
            for (index, (&ei, &pi)) in e.iter().zip(pr.iter()).enumerate() {
                if pi > ei {
                    out.push(RawExceedance {
                        example_id: self.id,
                        vector,
                        index,
                    });
                }
            }
        }
        out
    }
}

/// The single cell in the source tables where the corrected distance exceeds
/// the raw one (example 2, second prototype, fourth entry: raw 27 vs
/// corrected 65). Its value is load-bearing: the published partial total 252
/// only reproduces with it.
pub const KNOWN_EXCEEDANCE: RawExceedance = RawExceedance {
    example_id: 2,
    vector: RealMode::Fv2,
    index: 3,
};

/// Published results for one example: the four totals and the two ratios as
/// printed in the source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PublishedTotals {
    pub eu_fv1: f64,
    pub eu_fv2: f64,
    pub pr_fv1: f64,
    pub pr_fv2: f64,
    pub ratio_eu: f64,
    pub ratio_pr: f64,
}

/// Published totals must match recomputed sums exactly; ratios were printed
/// with mixed rounding and truncation, so they get a loose tolerance.
pub const RATIO_TOLERANCE: f64 = 0.01;

const EX1_FV1_E: [f64; 20] = [
    97.0, 39.0, 77.0, 65.0, 38.0, 66.0, 67.0, 99.0, 47.0, 97.0, //
    99.0, 26.0, 47.0, 79.0, 77.0, 48.0, 47.0, 78.0, 99.0, 64.0,
];
const EX1_FV1_PR: [f64; 20] = [
    59.0, 7.0, 34.0, 34.0, 15.0, 42.0, 49.0, 67.0, 18.0, 57.0, //
    36.0, 12.0, 25.0, 45.0, 34.0, 16.0, 26.0, 28.0, 59.0, 24.0,
];
const EX1_FV2_E: [f64; 20] = [
    37.0, 99.0, 57.0, 65.0, 98.0, 66.0, 67.0, 39.0, 87.0, 37.0, //
    39.0, 106.0, 87.0, 59.0, 57.0, 89.0, 87.0, 58.0, 39.0, 64.0,
];
const EX1_FV2_PR: [f64; 20] = [
    29.0, 77.0, 36.0, 41.0, 59.0, 48.0, 56.0, 25.0, 34.0, 17.0, //
    12.0, 55.0, 54.0, 39.0, 30.0, 50.0, 32.0, 38.0, 19.0, 31.0,
];

const EX2_FV1_E: [f64; 20] = [
    36.0, 78.0, 55.0, 38.0, 19.0, 86.0, 67.0, 46.0, 84.0, 69.0, //
    44.0, 96.0, 78.0, 108.0, 48.0, 86.0, 46.0, 68.0, 45.0, 78.0,
];
const EX2_FV1_PR: [f64; 20] = [
    24.0, 32.0, 18.0, 8.0, 8.0, 32.0, 18.0, 20.0, 25.0, 22.0, //
    14.0, 42.0, 21.0, 23.0, 13.0, 29.0, 14.0, 22.0, 17.0, 21.0,
];
const EX2_FV2_E: [f64; 20] = [
    58.0, 57.0, 55.0, 27.0, 58.0, 28.0, 76.0, 57.0, 53.0, 18.0, //
    75.0, 59.0, 29.0, 26.0, 49.0, 49.0, 24.0, 49.0, 109.0, 57.0,
];
const EX2_FV2_PR: [f64; 20] = [
    24.0, 30.0, 24.0, 65.0, 21.0, 12.0, 24.0, 27.0, 18.0, 7.0, //
    21.0, 18.0, 9.0, 11.0, 15.0, 14.0, 9.0, 14.0, 34.0, 19.0,
];

const EX3_FV1_E: [f64; 20] = [
    29.0, 35.0, 26.0, 64.0, 78.0, 54.0, 66.0, 49.0, 84.0, 57.0, //
    74.0, 38.0, 16.0, 87.0, 55.0, 15.0, 47.0, 57.0, 34.0, 74.0,
];
const EX3_FV1_PR: [f64; 20] = [
    9.0, 16.0, 6.0, 18.0, 38.0, 16.0, 12.0, 21.0, 21.0, 19.0, //
    29.0, 8.0, 5.0, 23.0, 13.0, 12.0, 11.0, 14.0, 10.0, 16.0,
];
const EX3_FV2_E: [f64; 20] = [
    48.0, 59.0, 39.0, 56.0, 66.0, 48.0, 18.0, 74.0, 55.0, 29.0, //
    27.0, 84.0, 57.0, 48.0, 34.0, 24.0, 97.0, 26.0, 38.0, 47.0,
];
const EX3_FV2_PR: [f64; 20] = [
    19.0, 28.0, 16.0, 25.0, 34.0, 17.0, 11.0, 36.0, 23.0, 8.0, //
    13.0, 41.0, 25.0, 21.0, 12.0, 21.0, 62.0, 12.0, 14.0, 21.0,
];

/// Published totals and ratios, one entry per example.
pub fn published_totals() -> [PublishedTotals; 3] {
    [
        PublishedTotals {
            eu_fv1: 1376.0,
            eu_fv2: 1337.0,
            pr_fv1: 687.0,
            pr_fv2: 782.0,
            ratio_eu: 1.03,
            ratio_pr: 0.87,
        },
        PublishedTotals {
            eu_fv1: 1275.0,
            eu_fv2: 1013.0,
            pr_fv1: 423.0,
            pr_fv2: 252.0,
            ratio_eu: 1.26,
            ratio_pr: 1.68,
        },
        PublishedTotals {
            eu_fv1: 1039.0,
            eu_fv2: 974.0,
            pr_fv1: 317.0,
            pr_fv2: 459.0,
            ratio_eu: 1.07,
            ratio_pr: 0.69,
        },
    ]
}

/// The three embedded reference examples.
///
/// Panics if the embedded transcription drifts from its pinned shape: all
/// rows twenty entries long, and the corrected-exceeds-raw anomalies limited
/// to exactly [`KNOWN_EXCEEDANCE`].
pub fn load_reference_tables() -> Vec<ReferenceExample> {
    let examples = vec![
        ReferenceExample {
            id: 1,
            fv1_e: EX1_FV1_E.to_vec(),
            fv1_pr: EX1_FV1_PR.to_vec(),
            fv2_e: EX1_FV2_E.to_vec(),
            fv2_pr: EX1_FV2_PR.to_vec(),
            real_mode: RealMode::Fv1,
        },
        ReferenceExample {
            id: 2,
            fv1_e: EX2_FV1_E.to_vec(),
            fv1_pr: EX2_FV1_PR.to_vec(),
            fv2_e: EX2_FV2_E.to_vec(),
            fv2_pr: EX2_FV2_PR.to_vec(),
            real_mode: RealMode::Fv2,
        },
        ReferenceExample {
            id: 3,
            fv1_e: EX3_FV1_E.to_vec(),
            fv1_pr: EX3_FV1_PR.to_vec(),
            fv2_e: EX3_FV2_E.to_vec(),
            fv2_pr: EX3_FV2_PR.to_vec(),
            real_mode: RealMode::Fv1,
        },
    ];

    let mut exceedances = Vec::new();
    for example in &examples {
        for row in [
            &example.fv1_e,
            &example.fv1_pr,
            &example.fv2_e,
            &example.fv2_pr,
        ] {
            assert_eq!(row.len(), 20, "reference row length drifted");
        }
        exceedances.extend(example.raw_exceedances());
    }
    assert_eq!(
        exceedances,
        vec![KNOWN_EXCEEDANCE],
        "reference-table anomaly set drifted from the pinned transcription"
    );

    examples
}

/// A published total against its recomputed value. The flag fires on any
/// nonzero difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TotalCheck {
    pub published: f64,
    pub computed: f64,
    pub discrepancy: bool,
}

impl TotalCheck {
    fn new(published: f64, computed: f64) -> Self {
        Self {
            published,
            computed,
            discrepancy: published != computed,
        }
    }
}

/// A published ratio against the same ratio recomputed two ways: from the
/// published totals (the check that replicates the source arithmetic) and
/// from the recomputed totals (informational). The flag fires when the
/// published-totals ratio misses the printed value by more than
/// [`RATIO_TOLERANCE`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioCheck {
    pub published: f64,
    pub from_published_totals: f64,
    pub from_computed_totals: f64,
    pub discrepancy: bool,
}

impl RatioCheck {
    fn new(published: f64, from_published_totals: f64, from_computed_totals: f64) -> Self {
        Self {
            published,
            from_published_totals,
            from_computed_totals,
            discrepancy: (from_published_totals - published).abs() > RATIO_TOLERANCE,
        }
    }
}

/// Winner-take-smaller decision for one metric, evaluated on both the
/// recomputed and the published totals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionCheck {
    pub from_computed: RealMode,
    pub from_published: RealMode,
    /// The decision matches the example's true class.
    pub correct: bool,
    /// Published and recomputed totals lead to the same decision.
    pub stable: bool,
}

impl DecisionCheck {
    fn new(real_mode: RealMode, computed: (f64, f64), published: (f64, f64)) -> Self {
        let from_computed = smaller_wins(computed.0, computed.1);
        let from_published = smaller_wins(published.0, published.1);
        Self {
            from_computed,
            from_published,
            correct: from_computed == real_mode,
            stable: from_computed == from_published,
        }
    }
}

/// Ties go to the second prototype, matching the ratio rule's `C ≤ 1` branch.
fn smaller_wins(fv1_total: f64, fv2_total: f64) -> RealMode {
    if fv2_total <= fv1_total {
        RealMode::Fv2
    } else {
        RealMode::Fv1
    }
}

/// Full replication record for one example.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationReport {
    pub example_id: u8,
    pub real_mode: RealMode,
    pub eu_fv1: TotalCheck,
    pub eu_fv2: TotalCheck,
    pub pr_fv1: TotalCheck,
    pub pr_fv2: TotalCheck,
    pub ratio_eu: RatioCheck,
    pub ratio_pr: RatioCheck,
    pub euclidean_decision: DecisionCheck,
    pub probability_decision: DecisionCheck,
    pub discrepancy_count: usize,
}

/// Recomputes one example's totals, ratios and decisions and compares them
/// with the published values. Disagreements are flagged, never patched.
pub fn replicate_totals(example: &ReferenceExample) -> ReplicationReport {
    let published = published_totals()[(example.id - 1) as usize];

    let sum = |row: &[f64]| aggregate(row.iter().copied(), AggregateMode::L1);
    let eu_fv1 = TotalCheck::new(published.eu_fv1, sum(&example.fv1_e));
    let eu_fv2 = TotalCheck::new(published.eu_fv2, sum(&example.fv2_e));
    let pr_fv1 = TotalCheck::new(published.pr_fv1, sum(&example.fv1_pr));
    let pr_fv2 = TotalCheck::new(published.pr_fv2, sum(&example.fv2_pr));

    let ratio_eu = RatioCheck::new(
        published.ratio_eu,
        published.eu_fv1 / published.eu_fv2,
        eu_fv1.computed / eu_fv2.computed,
    );
    let ratio_pr = RatioCheck::new(
        published.ratio_pr,
        published.pr_fv1 / published.pr_fv2,
        pr_fv1.computed / pr_fv2.computed,
    );

    let euclidean_decision = DecisionCheck::new(
        example.real_mode,
        (eu_fv1.computed, eu_fv2.computed),
        (published.eu_fv1, published.eu_fv2),
    );
    let probability_decision = DecisionCheck::new(
        example.real_mode,
        (pr_fv1.computed, pr_fv2.computed),
        (published.pr_fv1, published.pr_fv2),
    );

    let discrepancy_count = [eu_fv1, eu_fv2, pr_fv1, pr_fv2]
        .iter()
        .filter(|t| t.discrepancy)
        .count()
        + [ratio_eu, ratio_pr].iter().filter(|r| r.discrepancy).count();

    ReplicationReport {
        example_id: example.id,
        real_mode: example.real_mode,
        eu_fv1,
        eu_fv2,
        pr_fv1,
        pr_fv2,
        ratio_eu,
        ratio_pr,
        euclidean_decision,
        probability_decision,
        discrepancy_count,
    }
}

/// Replication reports for all three embedded examples.
pub fn replicate_all() -> Vec<ReplicationReport> {
    load_reference_tables().iter().map(replicate_totals).collect()
}

/// Per-example decision comparison between the plain Euclidean rule and the
/// probability-corrected rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionComparison {
    pub example_id: u8,
    pub real_mode: RealMode,
    pub euclidean: RealMode,
    pub euclidean_correct: bool,
    pub probability: RealMode,
    pub probability_correct: bool,
}

/// Evaluates both decision rules on every embedded example.
pub fn replicate_decisions() -> Vec<DecisionComparison> {
    replicate_all()
        .iter()
        .map(|report| DecisionComparison {
            example_id: report.example_id,
            real_mode: report.real_mode,
            euclidean: report.euclidean_decision.from_computed,
            euclidean_correct: report.euclidean_decision.correct,
            probability: report.probability_decision.from_computed,
            probability_correct: report.probability_decision.correct,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_cells_spot_checks() {
        let tables = load_reference_tables();
        assert_eq!(tables[0].fv1_e[0], 97.0);
        assert_eq!(*tables[1].fv2_pr.last().unwrap(), 19.0);
        let pr_sum: f64 = tables[2].fv1_pr.iter().sum();
        assert_eq!(pr_sum, 317.0);
    }

    #[test]
    fn exceedance_set_is_pinned() {
        let tables = load_reference_tables();
        let all: Vec<RawExceedance> = tables.iter().flat_map(|t| t.raw_exceedances()).collect();
        assert_eq!(all, vec![KNOWN_EXCEEDANCE]);
        // The anomalous cell is load-bearing for the published partial total.
        assert_eq!(tables[1].fv2_e[3], 27.0);
        assert_eq!(tables[1].fv2_pr[3], 65.0);
    }

    #[test]
    fn example2_totals_match_published_eu() {
        let tables = load_reference_tables();
        let report = replicate_totals(&tables[1]);
        assert_eq!(report.eu_fv1.computed, 1275.0);
        assert!(!report.eu_fv1.discrepancy);
        assert_eq!(report.eu_fv2.computed, 1013.0);
        assert!(!report.eu_fv2.discrepancy);
    }

    #[test]
    fn example3_fully_consistent() {
        let tables = load_reference_tables();
        let report = replicate_totals(&tables[2]);
        assert_eq!(report.discrepancy_count, 0);
        assert_eq!(report.pr_fv1.computed, 317.0);
        assert_eq!(report.pr_fv2.computed, 459.0);
        assert!((report.ratio_pr.from_published_totals - 0.69).abs() <= RATIO_TOLERANCE);
    }

    #[test]
    fn example1_eu_total_flagged() {
        let tables = load_reference_tables();
        let report = replicate_totals(&tables[0]);
        assert_eq!(report.eu_fv1.published, 1376.0);
        assert_eq!(report.eu_fv1.computed, 1356.0);
        assert!(report.eu_fv1.discrepancy);
        assert_eq!(report.discrepancy_count, 1);
    }

    #[test]
    fn example2_pr_partial_total_flagged() {
        let tables = load_reference_tables();
        let report = replicate_totals(&tables[1]);
        assert_eq!(report.pr_fv2.published, 252.0);
        assert_eq!(report.pr_fv2.computed, 416.0);
        assert!(report.pr_fv2.discrepancy);
        // The published 252 is the first row's sum alone.
        let first_row: f64 = tables[1].fv2_pr[..10].iter().sum();
        assert_eq!(first_row, 252.0);
    }

    #[test]
    fn decisions_match_reference_marks() {
        let outcomes = replicate_decisions();
        assert_eq!(outcomes.len(), 3);

        assert_eq!(outcomes[0].euclidean, RealMode::Fv2);
        assert!(!outcomes[0].euclidean_correct);
        assert_eq!(outcomes[0].probability, RealMode::Fv1);
        assert!(outcomes[0].probability_correct);

        assert!(outcomes[1].euclidean_correct);
        assert!(outcomes[1].probability_correct);

        assert!(!outcomes[2].euclidean_correct);
        assert!(outcomes[2].probability_correct);
    }

    #[test]
    fn decisions_stable_across_published_and_computed() {
        for report in replicate_all() {
            assert!(report.euclidean_decision.stable);
            assert!(report.probability_decision.stable);
        }
    }
}
