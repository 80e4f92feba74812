//! Scale-quantized probability distributions and histogram densities.
//!
//! A [`ScaledDistribution`] summarizes one feature of a prototype as a center
//! value plus an ordered list of regions per side. Each [`Region`] is an
//! interval between adjacent scale boundaries, carrying a width along the
//! feature axis and the probability mass that falls inside it. Boundaries grow
//! outward from the center: the outer edge of region `i` sits at
//! `center ± (width_1 + … + width_i)`.
//!
//! Fitting is quantile-based: the center is the sample median, each side is
//! cut into `k` regions of equal per-side mass, and the outermost boundary is
//! pinned to the side's extreme sample so the support is truncated there.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed when checking that region masses sum to at most one.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

/// One interval of a [`ScaledDistribution`], measured outward from the center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    /// Interval length along the feature axis.
    pub width: f64,
    /// Probability mass carried by the interval, in `[0, 1]`.
    pub mass: f64,
}

impl Region {
    pub fn new(width: f64, mass: f64) -> Result<Self> {
        if !width.is_finite() || width < 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "region width must be finite and nonnegative, got {width}"
            )));
        }
        if !mass.is_finite() || !(0.0..=1.0).contains(&mass) {
            return Err(Error::InvalidDistribution(format!(
                "region mass must lie in [0, 1], got {mass}"
            )));
        }
        Ok(Self { width, mass })
    }
}

/// A single feature's distribution: a center plus per-side region lists
/// ordered from the center outward.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledDistribution {
    pub center: f64,
    /// Regions below the center, innermost first.
    pub below: Vec<Region>,
    /// Regions above the center, innermost first.
    pub above: Vec<Region>,
}

impl ScaledDistribution {
    pub fn new(center: f64, below: Vec<Region>, above: Vec<Region>) -> Result<Self> {
        let dist = Self {
            center,
            below,
            above,
        };
        dist.validate()?;
        Ok(dist)
    }

    /// A distribution with no regions at all; every correction is zero.
    pub fn degenerate_at(center: f64) -> Self {
        Self {
            center,
            below: Vec::new(),
            above: Vec::new(),
        }
    }

    /// Re-checks the construction invariants. Deserialized values should be
    /// passed through this before use.
    pub fn validate(&self) -> Result<()> {
        if !self.center.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "center must be finite, got {}",
                self.center
            )));
        }
        for region in self.below.iter().chain(&self.above) {
            Region::new(region.width, region.mass)?;
        }
        let total = self.mass_sum();
        if total > 1.0 + MASS_SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "region masses sum to {total}, exceeding 1"
            )));
        }
        Ok(())
    }

    /// Total mass across both sides.
    pub fn mass_sum(&self) -> f64 {
        self.below
            .iter()
            .chain(&self.above)
            .map(|r| r.mass)
            .sum()
    }

    /// All widths zero or all masses zero: the distribution contributes no
    /// correction and distances reduce to the Euclidean case.
    pub fn is_degenerate(&self) -> bool {
        let regions = || self.below.iter().chain(&self.above);
        regions().all(|r| r.width == 0.0) || regions().all(|r| r.mass == 0.0)
    }

    /// Scale boundaries above the center, innermost first.
    pub fn scales_above(&self) -> Vec<f64> {
        let mut pos = self.center;
        self.above
            .iter()
            .map(|r| {
                pos += r.width;
                pos
            })
            .collect()
    }

    /// Scale boundaries below the center, innermost first.
    pub fn scales_below(&self) -> Vec<f64> {
        let mut pos = self.center;
        self.below
            .iter()
            .map(|r| {
                pos -= r.width;
                pos
            })
            .collect()
    }
}

/// An ordered sequence of per-feature distributions; the learned prototype a
/// query vector is matched against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prototype {
    pub features: Vec<ScaledDistribution>,
}

impl Prototype {
    pub fn new(features: Vec<ScaledDistribution>) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::EmptySamples);
        }
        let proto = Self { features };
        proto.validate()?;
        Ok(proto)
    }

    pub fn validate(&self) -> Result<()> {
        if self.features.is_empty() {
            return Err(Error::EmptySamples);
        }
        for feature in &self.features {
            feature.validate()?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    /// The feature centers, in order.
    pub fn centers(&self) -> Vec<f64> {
        self.features.iter().map(|f| f.center).collect()
    }
}

/// The identification target: one scalar coordinate per feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryVector {
    pub coords: Vec<f64>,
}

impl QueryVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl From<Vec<f64>> for QueryVector {
    fn from(coords: Vec<f64>) -> Self {
        Self::new(coords)
    }
}

/// A normalized piecewise-constant density over equal-width bins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramDensity {
    pub lower: f64,
    pub bin_width: f64,
    /// Density values, not counts: `sum(bins) * bin_width == 1`.
    pub bins: Vec<f64>,
}

impl HistogramDensity {
    pub fn new(lower: f64, bin_width: f64, bins: Vec<f64>) -> Result<Self> {
        if !bin_width.is_finite() || bin_width <= 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "bin width must be positive, got {bin_width}"
            )));
        }
        if bins.is_empty() {
            return Err(Error::InvalidDistribution("histogram has no bins".into()));
        }
        if bins.iter().any(|b| !b.is_finite() || *b < 0.0) {
            return Err(Error::InvalidDistribution(
                "histogram bins must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = bins.iter().map(|b| b * bin_width).sum();
        if (total - 1.0).abs() > MASS_SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "histogram integrates to {total}, expected 1"
            )));
        }
        Ok(Self {
            lower,
            bin_width,
            bins,
        })
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// True when `self` and `other` are defined over the same bins.
    pub fn same_binning(&self, other: &Self) -> bool {
        self.lower == other.lower
            && self.bin_width == other.bin_width
            && self.bins.len() == other.bins.len()
    }
}

/// Fits a [`ScaledDistribution`] to a sample set.
///
/// The center is the sample median (midpoint of the two central order
/// statistics for even counts). Samples strictly below the center form the
/// below side, samples strictly above form the above side; samples exactly at
/// the center sit on the center point and carry no region mass. Each side is
/// cut into `k_per_side` regions of equal mass `side_fraction / k_per_side`,
/// with boundaries at the side's equal-mass quantiles and the outermost
/// boundary pinned to the side's extreme sample.
pub fn fit_scaled_distribution(samples: &[f64], k_per_side: usize) -> Result<ScaledDistribution> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if k_per_side == 0 {
        return Err(Error::InvalidParameter(
            "k_per_side must be at least 1".into(),
        ));
    }
    if samples.iter().any(|s| !s.is_finite()) {
        return Err(Error::InvalidParameter("samples must be finite".into()));
    }

    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let center = median_sorted(&sorted);
    let n = sorted.len() as f64;

    let below_end = sorted.partition_point(|&x| x < center);
    let above_start = sorted.partition_point(|&x| x <= center);
    let below_samples = &sorted[..below_end];
    let above_samples = &sorted[above_start..];

    let below = side_regions(below_samples, center, k_per_side, n, Side::Below)?;
    let above = side_regions(above_samples, center, k_per_side, n, Side::Above)?;

    ScaledDistribution::new(center, below, above)
}

#[derive(Clone, Copy)]
enum Side {
    Below,
    Above,
}

fn side_regions(
    side_samples: &[f64],
    center: f64,
    k: usize,
    n_total: f64,
    side: Side,
) -> Result<Vec<Region>> {
    if side_samples.is_empty() {
        return Ok(Vec::new());
    }
    let mass = (side_samples.len() as f64 / n_total) / k as f64;
    let mut regions = Vec::with_capacity(k);
    let mut previous = center;
    for i in 1..=k {
        let level = match side {
            Side::Above => i as f64 / k as f64,
            Side::Below => (k - i) as f64 / k as f64,
        };
        let boundary = quantile_sorted(side_samples, level);
        let width = match side {
            Side::Above => boundary - previous,
            Side::Below => previous - boundary,
        };
        // Interpolation rounding can leave a tiny negative width.
        regions.push(Region::new(width.max(0.0), mass)?);
        previous = boundary;
    }
    Ok(regions)
}

/// Linear-interpolation quantile of pre-sorted data; `level` 0 is the
/// minimum, `level` 1 the maximum, both hit exactly.
fn quantile_sorted(sorted: &[f64], level: f64) -> f64 {
    let m = sorted.len();
    if m == 1 {
        return sorted[0];
    }
    let pos = level * (m - 1) as f64;
    let lo = (pos.floor() as usize).min(m - 1);
    let hi = (lo + 1).min(m - 1);
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

fn median_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Fits one [`ScaledDistribution`] per feature column.
pub fn fit_prototype(sample_matrix: &[Vec<f64>], k_per_side: usize) -> Result<Prototype> {
    if sample_matrix.is_empty() {
        return Err(Error::EmptySamples);
    }
    let expected = sample_matrix[0].len();
    for (column, samples) in sample_matrix.iter().enumerate() {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        if samples.len() != expected {
            return Err(Error::RaggedColumns {
                column,
                len: samples.len(),
                expected,
            });
        }
    }
    let features = sample_matrix
        .iter()
        .map(|column| fit_scaled_distribution(column, k_per_side))
        .collect::<Result<Vec<_>>>()?;
    Prototype::new(features)
}

/// Bins samples over `[lo, hi)` into a normalized density. Out-of-range
/// samples clip to the edge bins so mismatched supports stay comparable.
pub fn fit_histogram(
    samples: &[f64],
    bin_count: usize,
    lo: f64,
    hi: f64,
) -> Result<HistogramDensity> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if bin_count == 0 {
        return Err(Error::InvalidParameter(
            "bin_count must be at least 1".into(),
        ));
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    if samples.iter().any(|s| !s.is_finite()) {
        return Err(Error::InvalidParameter("samples must be finite".into()));
    }

    let bin_width = (hi - lo) / bin_count as f64;
    let mut counts = vec![0usize; bin_count];
    for &sample in samples {
        let idx = ((sample - lo) / bin_width).floor();
        let idx = (idx.max(0.0) as usize).min(bin_count - 1);
        counts[idx] += 1;
    }
    let n = samples.len() as f64;
    let bins = counts
        .into_iter()
        .map(|c| c as f64 / (n * bin_width))
        .collect();
    HistogramDensity::new(lo, bin_width, bins)
}
